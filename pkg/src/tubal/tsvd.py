"""T-SVD factorization, s-diagonal checks, spectra and low-rank truncations.

The factorization takes an ordinary SVD of every transform-domain slice
``Phi_L(A)(k) = Xi(k) D(k) Theta(k)^H`` and maps the factors back tube-wise.
When the transform pairs slices by conjugation (the DFT and anything of the
form ``DFT @ real``), slice ``perm[k]`` is exactly ``conj`` of slice ``k``; we
take one SVD per pair and conjugate it onto the partner, which makes ``U``,
``S`` and ``V`` real to round-off.  Real transforms only ever see real slices.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import transform as tf
from .errors import (
    NoConvergence,
    NotUnitary,
    RankOutOfRange,
    RealnessViolation,
    TubalError,
    ZeroTensor,
)
from .linalg import as_tubal, frobenius, from_slices, mat_tprod, mat_transpose, slices
from .scalar import require_doubly_real_preserving

RANK_TOL = 1e-10
FACTOR_REAL_TOL = 1e-6


@dataclass
class SDiagonal:
    """Diagonal tubal matrix given by its ``r = min(m, n)`` diagonal tubes.

    ``transform_values[l, k]`` is the k-th transform-domain component of the
    l-th diagonal tube (``d_ll(k)`` in the usual notation).
    """

    m: int
    n: int
    p: int
    tubes: np.ndarray
    transform_values: np.ndarray

    def tensor(self):
        out = np.zeros((self.m, self.n, self.p))
        r = min(self.m, self.n)
        out[np.arange(r), np.arange(r)] = self.tubes
        return out


@dataclass
class TsvdFactors:
    L: tf.Transform
    U: np.ndarray
    S: SDiagonal
    V: np.ndarray
    xi: np.ndarray = field(repr=False)
    theta: np.ndarray = field(repr=False)
    realness_residuals: dict = field(default_factory=dict)
    slice_svd_backward_errors: np.ndarray = field(default=None, repr=False)

    @property
    def shape(self):
        return (self.S.m, self.S.n, self.S.p)

    def reconstruct(self):
        return mat_tprod(self.L, mat_tprod(self.L, self.U, self.S.tensor()), mat_transpose(self.L, self.V))


@dataclass
class SDiagonalReport:
    symmetric: bool
    psd: bool
    ordered: bool
    offdiag_zero: bool
    worst_symmetry: float
    worst_psd: float
    worst_order: float
    worst_offdiag: float

    @property
    def all(self):
        return self.symmetric and self.psd and self.ordered and self.offdiag_zero


@dataclass
class SpectrumReport:
    """T- and B-singular values of a tubal matrix.

    ``tau[i]`` is the tail energy after keeping ``i`` T-singular values
    (``tau[0]`` is the full norm), and likewise ``nu[j]`` for B-singular
    values.  ``eta[l, k]`` is the 1-based position of ``d_ll(k)`` in ``mu``.
    """

    sigma: np.ndarray
    mu: np.ndarray
    eta: np.ndarray
    tau: np.ndarray
    nu: np.ndarray
    rank_t: int
    rank_b: int

    def to_dict(self):
        return {
            "sigma": self.sigma.tolist(),
            "mu": self.mu.tolist(),
            "eta": self.eta.tolist(),
            "tau": self.tau.tolist(),
            "nu": self.nu.tolist(),
            "rank_t": self.rank_t,
            "rank_b": self.rank_b,
        }


def _workers():
    try:
        return max(1, int(os.environ.get("TUBAL_THREADS", "1")))
    except ValueError:
        return 1


def _map(fn, items):
    n = _workers()
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def complex_svd(M):
    """Full SVD ``M = Xi diag(d) Theta^H`` with ``d`` descending.

    Backed by LAPACK; a failure to converge surfaces as :class:`NoConvergence`.
    """
    M = np.asarray(M)
    if not np.all(np.isfinite(M)):
        raise TubalError("matrix has non-finite entries")
    try:
        Xi, d, Vh = np.linalg.svd(M, full_matrices=True)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from None
    return Xi, d, Vh.conj().T


def _fix_phases(Xi, Theta, r):
    # largest-modulus entry of every left vector made real positive;
    # the paired right vector gets the same rotation so Xi D Theta^H is unchanged
    Xi, Theta = Xi.copy(), Theta.copy()
    for l in range(Xi.shape[1]):
        col = Xi[:, l]
        ph = col[np.argmax(np.abs(col))]
        ph = ph / abs(ph)
        Xi[:, l] /= ph
        if l < r:
            Theta[:, l] /= ph
    for l in range(r, Theta.shape[1]):
        col = Theta[:, l]
        ph = col[np.argmax(np.abs(col))]
        Theta[:, l] /= ph / abs(ph)
    return Xi, Theta


def _slice_plan(L):
    """Representative slices and, for each, the partner it determines (or None)."""
    cs = L.cls.conj_structure
    p = L.p
    if not cs.pairs_slices:
        return [(k, None, False) for k in range(p)]
    plan = []
    for k in range(p):
        j = int(cs.perm[k])
        if j == k:
            plan.append((k, None, True))
        elif j > k:
            plan.append((k, j, False))
    return plan


def _check_real(resid, tol, what, promised):
    if promised and resid > tol:
        raise RealnessViolation(f"{what} has imaginary residual {resid:.3e} (tolerance {tol:.1e})", residual=resid)


def tsvd(L, A):
    """T-SVD ``A = U *_L S *_L V^T`` under a doubly real-preserving ``L``."""
    require_doubly_real_preserving(L)
    A = as_tubal(A, L)
    m, n, p = A.shape
    r = min(m, n)
    Ah = slices(L, A)
    plan = _slice_plan(L)

    def work(item):
        k, _, real = item
        M = Ah[k].real if real else Ah[k]
        Xi, d, Th = complex_svd(M)
        Xi, Th = _fix_phases(Xi, Th, r)
        return Xi, d, Th

    xi = np.zeros((p, m, m), dtype=complex)
    theta = np.zeros((p, n, n), dtype=complex)
    D = np.zeros((p, r))
    for (k, partner, _), (Xk, dk, Tk) in zip(plan, _map(work, plan)):
        xi[k], D[k], theta[k] = Xk, dk, Tk
        if partner is not None:
            xi[partner], D[partner], theta[partner] = Xk.conj(), dk, Tk.conj()

    recon = (xi[:, :, :r] * D[:, None, :]) @ np.conj(np.transpose(theta[:, :, :r], (0, 2, 1)))
    backward = np.linalg.norm(Ah - recon, axis=(1, 2))

    promised = L.cls.conj_structure.pairs_slices
    U, ru = from_slices(L, xi)
    V, rv = from_slices(L, theta)
    s = tf.inverse(L, D.T)
    rs = float(np.max(np.abs(s.imag))) if s.size else 0.0
    norm = frobenius(A)
    _check_real(ru, FACTOR_REAL_TOL, "U", promised)
    _check_real(rv, FACTOR_REAL_TOL, "V", promised)
    _check_real(rs, FACTOR_REAL_TOL * max(norm, 1e-300), "S", promised)

    S = SDiagonal(m, n, p, np.ascontiguousarray(s.real), D.T.copy())
    return TsvdFactors(L, U, S, V, xi, theta, {"U": ru, "S": rs, "V": rv}, backward)


def g_part(L, A):
    """The canonical s-diagonal part ``G(A)``: built from slice singular values only."""
    require_doubly_real_preserving(L)
    A = as_tubal(A, L)
    m, n, p = A.shape
    r = min(m, n)
    Ah = slices(L, A)
    D = np.zeros((p, r))
    for k, partner, real in _slice_plan(L):
        M = Ah[k].real if real else Ah[k]
        if not np.all(np.isfinite(M)):
            raise TubalError("tensor has non-finite entries")
        try:
            D[k] = np.linalg.svd(M, compute_uv=False)
        except np.linalg.LinAlgError as exc:
            raise NoConvergence(str(exc)) from None
        if partner is not None:
            D[partner] = D[k]
    s = tf.inverse(L, D.T)
    rs = float(np.max(np.abs(s.imag))) if s.size else 0.0
    _check_real(rs, FACTOR_REAL_TOL * max(frobenius(A), 1e-300), "S", L.cls.conj_structure.pairs_slices)
    return SDiagonal(m, n, p, np.ascontiguousarray(s.real), D.T.copy())


def validate_s_diagonal(L, S, tol=1e-8):
    """Check the three s-diagonal properties plus diagonality, on ``S / ||S||_F``."""
    require_doubly_real_preserving(L)
    S = as_tubal(S, L)
    m, n, p = S.shape
    r = min(m, n)
    scale = frobenius(S)
    if scale >= 1e-300:
        S = S / scale
    idx = np.arange(r)
    tubes = S[idx, idx]
    off = S.copy()
    off[idx, idx] = 0.0
    worst_off = float(np.max(np.abs(off))) if off.size else 0.0

    worst_sym = float(np.max(np.abs(tubes @ L.cls.psi.T - tubes))) if r else 0.0
    d = tf.forward(L, tubes)
    worst_imag = float(np.max(np.abs(d.imag))) if r else 0.0
    worst_neg = float(max(0.0, -np.min(d.real))) if r else 0.0
    worst_order = float(max(0.0, np.max(d.real[1:] - d.real[:-1]))) if r > 1 else 0.0

    symmetric = worst_sym <= tol
    return SDiagonalReport(
        symmetric=symmetric,
        psd=symmetric and worst_imag <= tol and worst_neg <= tol,
        ordered=worst_order <= tol,
        offdiag_zero=worst_off <= tol,
        worst_symmetry=worst_sym,
        worst_psd=max(worst_imag, worst_neg),
        worst_order=worst_order,
        worst_offdiag=worst_off,
    )


def require_unitary(L):
    if not L.cls.is_unitary:
        raise NotUnitary(f"{L!r} is not unitary; use the normalized transform")


def _tail(x):
    # tail[i] = sqrt(sum of x[j]^2 for j >= i), with a trailing 0
    sq = np.asarray(x, dtype=float) ** 2
    return np.sqrt(np.append(np.cumsum(sq[::-1])[::-1], 0.0))


def eta_map(d):
    """1-based rank of every ``d[l, k]`` in the B-spectrum.

    Ties break by smaller ``l``, then smaller ``k``.
    """
    r, p = d.shape
    ll, kk = np.meshgrid(np.arange(r), np.arange(p), indexing="ij")
    order = np.lexsort((kk.ravel(), ll.ravel(), -d.ravel()))
    eta = np.empty(r * p, dtype=int)
    eta[order] = np.arange(1, r * p + 1)
    return eta.reshape(r, p)


def spectrum_from(S, rank_tol=RANK_TOL):
    d = S.transform_values
    sigma = np.linalg.norm(S.tubes, axis=1)
    mu = np.sort(d.ravel())[::-1]
    rank_t = int(np.sum(sigma > rank_tol * sigma[0])) if sigma.size and sigma[0] > 0 else 0
    rank_b = int(np.sum(mu > rank_tol * mu[0])) if mu.size and mu[0] > 0 else 0
    return SpectrumReport(sigma, mu, eta_map(d), _tail(sigma), _tail(mu), rank_t, rank_b)


def spectrum(L, A, rank_tol=RANK_TOL):
    require_doubly_real_preserving(L)
    require_unitary(L)
    return spectrum_from(g_part(L, A), rank_tol)


def tubal_rank(L, A, rank_tol=RANK_TOL):
    return spectrum(L, A, rank_tol).rank_t


def b_rank(L, A, rank_tol=RANK_TOL):
    return spectrum(L, A, rank_tol).rank_b


def _assemble(f, tubes):
    S = SDiagonal(f.S.m, f.S.n, f.S.p, tubes, None).tensor()
    return mat_tprod(f.L, mat_tprod(f.L, f.U, S), mat_transpose(f.L, f.V))


def truncate_tubal(f, i):
    """Best tubal-rank-``i`` approximation: keep the first ``i`` diagonal tubes."""
    require_unitary(f.L)
    r = min(f.S.m, f.S.n)
    if not 1 <= i < r:
        raise RankOutOfRange(f"tubal rank must satisfy 1 <= i < {r}, got {i}")
    tubes = f.S.tubes.copy()
    tubes[i:] = 0.0
    return _assemble(f, tubes)


def brank_cut_is_real(f, j):
    """False when keeping the top ``j`` B-singular values separates a conjugate pair."""
    cs = f.L.cls.conj_structure
    if not cs.pairs_slices:
        return True
    keep = eta_map(f.S.transform_values) <= j
    return bool(np.all(keep == keep[:, cs.perm]))


def truncate_brank(f, j):
    """Best B-rank-``j`` approximation.

    The ``j`` largest transform-domain diagonal values survive, the rest are
    zeroed in the transform domain before mapping back.  If the cut lands
    between the two members of a conjugate pair the result is not real and
    :class:`RealnessViolation` is raised.
    """
    require_unitary(f.L)
    d = f.S.transform_values
    total = d.size
    if not 1 <= j < total:
        raise RankOutOfRange(f"B-rank must satisfy 1 <= j < {total}, got {j}")
    dj = np.where(eta_map(d) <= j, d, 0.0)
    s = tf.inverse(f.L, dj)
    resid = float(np.max(np.abs(s.imag)))
    norm = float(np.linalg.norm(d))
    if resid > FACTOR_REAL_TOL * max(norm, 1e-300):
        hint = "" if brank_cut_is_real(f, j) else "; the cut splits a conjugate pair of slices, try j-1 or j+1"
        raise RealnessViolation(f"B-rank {j} truncation is not real (residual {resid:.3e}){hint}", value=s, residual=resid)
    return _assemble(f, np.ascontiguousarray(s.real))


def rank_factorization(L, A, rank_tol=RANK_TOL):
    """``A = B *_L C`` with ``B`` m x r, ``C`` r x n and ``r`` the tubal rank."""
    require_doubly_real_preserving(L)
    require_unitary(L)
    f = tsvd(L, A)
    spec = spectrum_from(f.S, rank_tol)
    R = spec.rank_t
    if R == 0:
        raise ZeroTensor("the zero tensor has no rank factorization")
    m, n, p = f.shape
    d = f.S.transform_values
    Bh = np.zeros((p, m, R), dtype=complex)
    Ch = np.zeros((p, R, n), dtype=complex)
    for k in range(p):
        rk = min(int(np.sum(d[:, k] > rank_tol * spec.mu[0])), R)
        Bh[k, :, :rk] = f.xi[k, :, :rk] * d[:rk, k]
        Ch[k, :rk, :] = f.theta[k, :, :rk].conj().T
    B, rb = from_slices(L, Bh)
    C, rc = from_slices(L, Ch)
    promised = L.cls.conj_structure.pairs_slices
    _check_real(rb, FACTOR_REAL_TOL * max(frobenius(A), 1.0), "B", promised)
    _check_real(rc, FACTOR_REAL_TOL, "C", promised)
    return B, C
