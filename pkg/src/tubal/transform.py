"""Invertible transforms ``L`` that parameterize the tubal algebra.

A :class:`Transform` wraps a ``p x p`` complex matrix together with its
inverse and a :class:`TransformClass` describing how the induced product
interacts with real vectors.  Transforms are immutable; every function here
is pure.

Two derived real matrices matter:

* the *transpose map* ``psi = H conj(L)``, which realizes
  ``a -> L^{-1} conj(L a)`` on real tube data, and
* the *conjugation structure* ``N = conj(L) H``, which says how
  ``conj(L a)`` permutes transform-domain components.  For the DFT this is
  the index flip ``k -> p + 2 - k`` and it is what lets the T-SVD compute
  one SVD per conjugate pair of slices.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, InvalidDimension, InvalidSpec, SingularTransform

CLASSIFY_TOL = 1e-8
INVERSE_TOL = 1e-10

BUILTINS = ("identity", "dft", "ndft", "dct", "orth", "ndft-orth", "dct-orth")


@dataclass(frozen=True)
class ConjStructure:
    """Shape of ``N = conj(L) H``.

    ``kind`` is one of ``"identity"``, ``"signed_permutation"``,
    ``"general"`` (real but not a signed permutation) or ``"not_real"``.
    For signed permutations ``perm[k]`` is the 0-based index with
    ``conj(L a)[k] == signs[k] * (L a)[perm[k]]``.
    """

    kind: str
    perm: np.ndarray | None = None
    signs: np.ndarray | None = None
    matrix: np.ndarray | None = None

    @property
    def pairs_slices(self):
        """True when transform-domain slices come in exact conjugate pairs."""
        if self.kind == "identity":
            return True
        return self.kind == "signed_permutation" and bool(np.all(self.signs > 0))


@dataclass(frozen=True)
class TransformClass:
    is_real_preserving: bool
    is_doubly_real_preserving: bool
    is_unitary: bool
    conj_structure: ConjStructure
    psi: np.ndarray | None = field(default=None, repr=False)

    def summary(self):
        cs = self.conj_structure
        out = {
            "real_preserving": self.is_real_preserving,
            "doubly_real_preserving": self.is_doubly_real_preserving,
            "unitary": self.is_unitary,
            "conj_structure": cs.kind,
        }
        if cs.kind == "signed_permutation":
            out["perm"] = [int(k) for k in cs.perm]
            out["signs"] = [int(s) for s in cs.signs]
        return out


@dataclass(frozen=True, eq=False)
class Transform:
    """An invertible ``p x p`` transform with cached inverse and class."""

    L: np.ndarray = field(repr=False)
    H: np.ndarray = field(repr=False)
    cls: TransformClass
    name: str = "custom"

    @property
    def p(self):
        return self.L.shape[0]

    @property
    def is_real(self):
        return self.cls.conj_structure.kind == "identity"

    def __repr__(self):
        return f"Transform(name={self.name!r}, p={self.p})"


def _readonly(x):
    x = np.array(x)
    x.setflags(write=False)
    return x


def _check_p(p):
    if int(p) != p or p < 1:
        raise InvalidDimension(f"tube length must be a positive integer, got {p}")
    return int(p)


def _invert(L):
    L = np.asarray(L, dtype=complex)
    if L.ndim != 2 or L.shape[0] != L.shape[1] or L.shape[0] < 1:
        raise InvalidDimension(f"transform must be a non-empty square matrix, got shape {L.shape}")
    if not np.all(np.isfinite(L)):
        raise SingularTransform("transform has non-finite entries")
    try:
        H = np.linalg.inv(L)
    except np.linalg.LinAlgError as exc:
        raise SingularTransform(str(exc)) from None
    p = L.shape[0]
    if np.linalg.norm(L @ H - np.eye(p)) > INVERSE_TOL * np.linalg.norm(L):
        raise SingularTransform("transform is numerically singular")
    return L, H


def _snap_signed_permutation(M, tol):
    """Return (perm, signs) if M is within tol of a signed permutation."""
    p = M.shape[0]
    perm = np.argmax(np.abs(M), axis=1)
    if len(set(perm.tolist())) != p:
        return None
    signs = np.sign(M[np.arange(p), perm].real)
    exact = np.zeros((p, p))
    exact[np.arange(p), perm] = signs
    if np.any(signs == 0) or np.max(np.abs(M - exact)) > tol:
        return None
    return perm, signs.astype(int)


def classify(L, tol=CLASSIFY_TOL):
    """Classify a transform matrix (or :class:`Transform`).

    Real preservation is checked on all basis pairs ``e_i (.)_L e_j``, which
    suffices by bilinearity.  Double real preservation additionally checks
    that the transpose map sends every basis vector to a real vector.
    """
    if isinstance(L, Transform):
        L = L.L
    L, H = _invert(L)
    p = L.shape[0]

    # e_i (.)_L e_j for every pair, as columns of a p x p^2 array
    prods = H @ (L[:, :, None] * L[:, None, :]).reshape(p, p * p)
    scale = max(1.0, float(np.max(np.abs(prods))))
    rp = bool(np.max(np.abs(prods.imag)) <= tol * scale)

    psi = H @ np.conj(L)
    drp = rp and bool(np.max(np.abs(psi.imag)) <= tol * max(1.0, float(np.max(np.abs(psi)))))
    psi_real = None
    if drp:
        psi_real = psi.real
        snapped = _snap_signed_permutation(psi_real, tol)
        if snapped is not None:
            psi_real = np.zeros((p, p))
            psi_real[np.arange(p), snapped[0]] = snapped[1]
        psi_real = _readonly(psi_real)

    unitary = bool(np.linalg.norm(L.conj().T @ L - np.eye(p)) <= tol)

    N = np.conj(L) @ H
    if np.max(np.abs(N.imag)) > tol * max(1.0, float(np.max(np.abs(N)))):
        cs = ConjStructure("not_real")
    elif np.max(np.abs(N - np.eye(p))) <= tol:
        cs = ConjStructure("identity", perm=_readonly(np.arange(p)), signs=_readonly(np.ones(p, dtype=int)))
    else:
        snapped = _snap_signed_permutation(N.real, tol)
        if snapped is not None:
            cs = ConjStructure("signed_permutation", perm=_readonly(snapped[0]), signs=_readonly(snapped[1]))
        else:
            cs = ConjStructure("general", matrix=_readonly(N.real))

    return TransformClass(rp, drp, unitary, cs, psi_real)


def from_matrix(L, name="custom"):
    L, H = _invert(L)
    return Transform(_readonly(L), _readonly(H), classify(L), name)


def make_dft(p):
    """The unnormalized DFT matrix ``F[k, l] = w**(k*l)``, ``w = exp(-2 pi i / p)``."""
    p = _check_p(p)
    k = np.arange(p)
    # reduce the exponent mod p before exponentiating to keep the phases exact-ish
    F = np.exp(-2j * np.pi * (np.outer(k, k) % p) / p)
    H = F.conj().T / p
    return Transform(_readonly(F), _readonly(H), classify(F), "dft")


def make_unitary_dft(p):
    p = _check_p(p)
    F = make_dft(p).L / np.sqrt(p)
    return Transform(_readonly(F), _readonly(F.conj().T), classify(F), "ndft")


def make_dct(p):
    """Orthonormal DCT-II matrix."""
    p = _check_p(p)
    k = np.arange(p)[:, None]
    j = np.arange(p)[None, :]
    C = np.sqrt(2.0 / p) * np.cos(np.pi * (2 * j + 1) * k / (2 * p))
    C[0] /= np.sqrt(2.0)
    return Transform(_readonly(C.astype(complex)), _readonly(C.T.astype(complex)), classify(C), "dct")


def make_random_orthogonal(p, seed):
    """Random real orthogonal matrix, deterministic per ``seed``.

    Q comes from QR of a Gaussian matrix with the signs of diag(R) folded
    into Q, so the result is Haar distributed and reproducible.
    """
    p = _check_p(p)
    rng = np.random.default_rng(seed)
    Q, R = np.linalg.qr(rng.standard_normal((p, p)))
    s = np.sign(np.diag(R))
    s[s == 0] = 1.0
    Q = Q * s
    return Transform(_readonly(Q.astype(complex)), _readonly(Q.T.astype(complex)), classify(Q), "orth")


def identity_transform(p):
    p = _check_p(p)
    eye = np.eye(p, dtype=complex)
    return Transform(_readonly(eye), _readonly(eye), classify(eye), "identity")


def compose(L, P):
    """The product transform ``L @ P``."""
    if L.p != P.p:
        raise DimensionMismatch(f"cannot compose transforms of size {L.p} and {P.p}")
    M = L.L @ P.L
    H = P.H @ L.H
    return Transform(_readonly(M), _readonly(H), classify(M), f"{L.name}*{P.name}")


def forward(L, a):
    """Apply ``L`` along the last axis of ``a``."""
    a = np.asarray(a)
    if a.shape[-1] != L.p:
        raise DimensionMismatch(f"expected tube length {L.p}, got {a.shape[-1]}")
    return a @ L.L.T


def inverse(L, c):
    """Apply ``L^{-1}`` along the last axis of ``c``."""
    c = np.asarray(c)
    if c.shape[-1] != L.p:
        raise DimensionMismatch(f"expected tube length {L.p}, got {c.shape[-1]}")
    return c @ L.H.T


def builtin(name, p, seed=0):
    """Look up a builtin transform by name.

    ``orth`` uses ``seed``; the composed builtins right-multiply by the same
    seeded orthogonal matrix.
    """
    makers = {
        "identity": identity_transform,
        "dft": make_dft,
        "ndft": make_unitary_dft,
        "dct": make_dct,
    }
    if name in makers:
        return makers[name](p)
    if name == "orth":
        return make_random_orthogonal(p, seed)
    if name == "ndft-orth":
        return compose(make_unitary_dft(p), make_random_orthogonal(p, seed))
    if name == "dct-orth":
        return compose(make_dct(p), make_random_orthogonal(p, seed))
    raise InvalidSpec(f"unknown builtin transform {name!r}; choose from {', '.join(BUILTINS)}")


def to_json(L):
    return {"p": L.p, "re": L.L.real.tolist(), "im": L.L.imag.tolist()}


def from_json(obj, name="file"):
    try:
        p = int(obj["p"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj.get("im", np.zeros_like(re)), dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidSpec(f"malformed transform JSON: {exc}") from None
    if re.shape != (p, p) or im.shape != (p, p):
        raise InvalidSpec(f"transform JSON declares p={p} but matrices have shapes {re.shape}, {im.shape}")
    return from_matrix(re + 1j * im, name=name)


def save(L, path):
    with open(path, "w") as fh:
        json.dump(to_json(L), fh)


def load(path):
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except json.JSONDecodeError as exc:
        raise InvalidSpec(f"{path}: {exc}") from None
    return from_json(obj, name=str(path))
