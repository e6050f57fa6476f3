"""Tubal vectors and tubal matrices over ``K_p(L)``.

A tubal matrix is stored as a real ``(m, n, p)`` array with entry
``A[i, j]`` the tube ``a_ij``; a tubal vector is an ``(n, p)`` array.  The
tube axis is last and contiguous, so the tube-wise transform is a single
matmul against ``L.T``.

The ``*_L`` product never loops over tubes: it moves to the transform
domain, multiplies the ``p`` frontal slices as ordinary complex matrices and
moves back.
"""
import numpy as np

from . import transform as tf
from .errors import DimensionMismatch, RealnessViolation
from .scalar import REAL_TOL, require_doubly_real_preserving, require_real_preserving, unit


def as_tubal(A, L=None, ndim=3):
    A = np.asarray(A, dtype=float)
    if A.ndim != ndim:
        raise DimensionMismatch(f"expected a {ndim}-d array, got shape {A.shape}")
    if L is not None and A.shape[-1] != L.p:
        raise DimensionMismatch(f"tube length {A.shape[-1]} does not match transform size {L.p}")
    return A


def slices(L, A):
    """Transform-domain frontal slices, shape ``(p, m, n)``.

    ``slices(L, A)[k]`` is the complex matrix of k-th components of the
    transformed tubes.
    """
    A = as_tubal(A, L)
    return np.einsum("kl,mnl->kmn", L.L, A)


def from_slices(L, S):
    """Inverse of :func:`slices`; returns ``(real tensor, max imaginary residual)``."""
    S = np.asarray(S)
    if S.ndim != 3 or S.shape[0] != L.p:
        raise DimensionMismatch(f"expected {L.p} slices, got array of shape {S.shape}")
    A = np.einsum("kl,lmn->mnk", L.H, S)
    resid = float(np.max(np.abs(A.imag))) if A.size else 0.0
    return np.ascontiguousarray(A.real), resid


def _real_or_raise(A, resid, tol, what):
    if resid > tol:
        raise RealnessViolation(f"{what} has imaginary residual {resid:.3e} (tolerance {tol:.1e})", residual=resid)
    return A


def mat_tprod(L, A, B):
    """``A *_L B`` for ``A`` of shape (m, s, p) and ``B`` of shape (s, n, p)."""
    require_real_preserving(L)
    A, B = as_tubal(A, L), as_tubal(B, L)
    if A.shape[1] != B.shape[0]:
        raise DimensionMismatch(f"inner dimensions differ: {A.shape} and {B.shape}")
    C, resid = from_slices(L, slices(L, A) @ slices(L, B))
    return _real_or_raise(C, resid, REAL_TOL * (frobenius(A) * frobenius(B) + 1), "product")


def mat_transpose(L, A):
    """Grid transpose with the tubal transpose applied to every entry."""
    require_doubly_real_preserving(L)
    A = as_tubal(A, L)
    return np.einsum("kl,jil->ijk", L.cls.psi, A)


def identity(L, n):
    require_real_preserving(L)
    eye = np.zeros((n, n, L.p))
    eye[np.arange(n), np.arange(n)] = unit(L)
    return eye


def is_orthogonal(L, Q, tol=None):
    """True iff every transform-domain slice of ``Q`` is unitary."""
    require_doubly_real_preserving(L)
    Q = as_tubal(Q, L)
    n = Q.shape[0]
    if Q.shape[1] != n:
        raise DimensionMismatch(f"orthogonality needs a square tubal matrix, got {Q.shape}")
    if tol is None:
        tol = 1e-8 * np.sqrt(n)
    Qh = slices(L, Q)
    gram = np.conj(np.transpose(Qh, (0, 2, 1))) @ Qh
    err = np.linalg.norm(gram - np.eye(n), axis=(1, 2))
    return bool(np.all(err <= tol))


def frobenius(A):
    return float(np.linalg.norm(np.asarray(A, dtype=float).ravel()))


def unfold(X):
    """Stack the k-th components of all tubes, block by block: length n*p."""
    X = as_tubal(X, ndim=2)
    return X.T.ravel()


def fold(v, n, p):
    v = np.asarray(v, dtype=float)
    if v.shape != (n * p,):
        raise DimensionMismatch(f"cannot fold a vector of shape {v.shape} into {n} tubes of length {p}")
    return v.reshape(p, n).T.copy()


def vec_inner(L, X, Y):
    """``X^T *_L Y`` for tubal vectors: the tube sum of ``x_k^T (.)_L y_k``."""
    X, Y = as_tubal(X, L, ndim=2), as_tubal(Y, L, ndim=2)
    if X.shape != Y.shape:
        raise DimensionMismatch(f"tubal vectors differ in shape: {X.shape} and {Y.shape}")
    Xt = mat_transpose(L, X[:, None, :])
    return mat_tprod(L, Xt, Y[:, None, :])[0, 0]


def is_normalized(L, X, tol=1e-8):
    return bool(np.max(np.abs(vec_inner(L, X, X) - unit(L))) <= tol)


def are_orthogonal(L, X, Y, tol=1e-8):
    return bool(np.max(np.abs(vec_inner(L, X, Y))) <= tol)
