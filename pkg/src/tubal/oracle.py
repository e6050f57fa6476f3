"""Brute-force reference computations used to cross-check the fast paths.

Nothing here is meant to be quick.  The routines deliberately take a
different route from the main modules: explicit index loops instead of
transform-domain products, a dense SVD of the full block-diagonal matrix
instead of per-slice SVDs, and a Jacobi eigen-solver instead of LAPACK.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import DimensionMismatch, NoConvergence, TubalError


def circ_conv(a, b):
    """Circular convolution by the index-sum formula, O(p^2)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise DimensionMismatch(f"circular convolution needs equal-length vectors, got {a.shape} and {b.shape}")
    p = a.shape[0]
    out = np.zeros(p)
    for i in range(p):
        for j in range(p):
            out[(i + j) % p] += a[i] * b[j]
    return out


def dft_sum(a):
    """``sum_i w^{i l} a(i)`` for every ``l``, evaluated term by term."""
    a = np.asarray(a)
    p = a.shape[0]
    out = np.zeros(p, dtype=complex)
    for l in range(p):
        for i in range(p):
            out[l] += np.exp(-2j * np.pi * ((i * l) % p) / p) * a[i]
    return out


def naive_mat_tprod(L, A, B):
    """``A *_L B`` as explicit tube-by-tube sums of scalar products."""
    from .scalar import tprod

    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    if A.shape[1] != B.shape[0]:
        raise DimensionMismatch(f"inner dimensions differ: {A.shape} and {B.shape}")
    m, s, p = A.shape
    n = B.shape[1]
    C = np.zeros((m, n, p))
    for i in range(m):
        for j in range(n):
            for l in range(s):
                C[i, j] += tprod(L, A[i, l], B[l, j])
    return C


def _slices_loop(L, A):
    m, n, p = A.shape
    out = np.zeros((p, m, n), dtype=complex)
    for i in range(m):
        for j in range(n):
            out[:, i, j] = L.L @ A[i, j]
    return out


def _unslice_loop(L, Sh):
    p, m, n = Sh.shape
    out = np.zeros((m, n, p), dtype=complex)
    for i in range(m):
        for j in range(n):
            out[i, j] = L.H @ Sh[:, i, j]
    return out


def bldg(L, A):
    """Block-diagonal matrix of all ``p`` transform-domain slices, (mp) x (np)."""
    A = np.asarray(A, dtype=float)
    if A.ndim != 3 or A.shape[2] != L.p:
        raise DimensionMismatch(f"tensor shape {A.shape} incompatible with transform size {L.p}")
    return scipy.linalg.block_diag(*_slices_loop(L, A))


def bldg_best_rank(L, A, j):
    """Best rank-``j`` approximation of ``bldg(L, A)`` folded back to a tensor.

    Returns ``(tensor, off_block_energy, imag_residual)``; the first two
    residuals are zero up to round-off only when the cut is unique.
    """
    A = np.asarray(A, dtype=float)
    m, n, p = A.shape
    U, s, Vh = np.linalg.svd(bldg(L, A))
    Bj = (U[:, :j] * s[:j]) @ Vh[:j]
    blocks = np.zeros((p, m, n), dtype=complex)
    mask = np.zeros(Bj.shape, dtype=bool)
    for k in range(p):
        blocks[k] = Bj[k * m:(k + 1) * m, k * n:(k + 1) * n]
        mask[k * m:(k + 1) * m, k * n:(k + 1) * n] = True
    off = float(np.linalg.norm(Bj[~mask]))
    X = _unslice_loop(L, blocks)
    return X.real, off, float(np.max(np.abs(X.imag)))


def hermitian_eigvals(M, tol=1e-14, max_sweeps=100):
    """Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations."""
    A = np.array(M, dtype=complex)
    n = A.shape[0]
    scale = np.linalg.norm(A)
    if scale == 0.0:
        return np.zeros(n)
    for _ in range(max_sweeps):
        off = np.linalg.norm(A - np.diag(np.diag(A)))
        if off <= tol * scale:
            return np.sort(np.diag(A).real)[::-1]
        for p in range(n - 1):
            for q in range(p + 1, n):
                b = A[p, q]
                if abs(b) <= 1e-300:
                    continue
                phase = b / abs(b)
                theta = 0.5 * np.arctan2(2 * abs(b), (A[q, q] - A[p, p]).real)
                c, s = np.cos(theta), np.sin(theta)
                G = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                idx = [p, q]
                A[:, idx] = A[:, idx] @ G
                A[idx, :] = G.conj().T @ A[idx, :]
    raise NoConvergence(f"Jacobi eigen-solver did not converge in {max_sweeps} sweeps")


def singular_values(M):
    """Singular values via eigenvalues of ``M^H M`` (Jacobi)."""
    M = np.asarray(M, dtype=complex)
    r = min(M.shape)
    G = M.conj().T @ M if M.shape[0] >= M.shape[1] else M @ M.conj().T
    ev = hermitian_eigvals(G)
    return np.sqrt(np.clip(ev[:r], 0.0, None))


def conj_pairing(L, tol=1e-8):
    """Permutation ``pi`` with ``conj(L a)[k] == (L a)[pi[k]]`` for real ``a``, or None."""
    N = np.conj(L.L) @ np.linalg.inv(L.L)
    pi = np.argmax(np.abs(N), axis=1)
    P = np.zeros_like(N)
    P[np.arange(L.p), pi] = 1.0
    if len(set(pi.tolist())) != L.p or np.max(np.abs(N - P)) > tol:
        return None
    return pi


def random_orthogonal_tubal(L, n, rng):
    """Random orthogonal tubal matrix from per-slice QR with positive diag(R).

    Slices of a real tensor come in conjugate pairs and the normalized QR is
    unique, so the factors pair up too and the result is real.
    """
    X = rng.standard_normal((n, n, L.p))
    Xh = _slices_loop(L, X)
    Q = np.zeros_like(Xh)
    for k in range(L.p):
        q, r = np.linalg.qr(Xh[k])
        ph = np.diag(r) / np.abs(np.diag(r))
        Q[k] = q * ph
    out = _unslice_loop(L, Q)
    if np.max(np.abs(out.imag)) > 1e-8:
        raise TubalError("transform does not support real orthogonal tubal matrices")
    return out.real


def _truncate_slices(L, X, ranks):
    """Per-slice best rank-``ranks[k]`` approximation, mapped back to real."""
    Xh = _slices_loop(L, X)
    for k in range(L.p):
        U, s, Vh = np.linalg.svd(Xh[k])
        rk = int(ranks[k])
        Xh[k] = (U[:, :rk] * s[:rk]) @ Vh[:rk]
    out = _unslice_loop(L, Xh)
    return out.real, float(np.max(np.abs(out.imag)))


def slice_ranks(L, X, tol=1e-10):
    sv = np.array([np.linalg.svd(S, compute_uv=False) for S in _slices_loop(L, X)])
    top = sv.max() if sv.size else 0.0
    if top == 0.0:
        return np.zeros(L.p, dtype=int)
    return np.sum(sv > tol * top, axis=1)


def _orbits(L):
    pi = conj_pairing(L)
    if pi is None:
        pi = np.arange(L.p)
    seen, orbits = set(), []
    for k in range(L.p):
        if k not in seen:
            orb = sorted({k, int(pi[k])})
            seen.update(orb)
            orbits.append(orb)
    return orbits


def _random_allocation(L, budget, r, rng):
    """Pair-consistent per-slice ranks (each <= r) with total <= budget."""
    ranks = np.zeros(L.p, dtype=int)
    orbits = _orbits(L)
    left = budget
    for _ in range(budget * 4):
        orb = orbits[rng.integers(len(orbits))]
        if ranks[orb[0]] < r and len(orb) <= left:
            ranks[orb] += 1
            left -= len(orb)
        if left == 0:
            break
    return ranks


def _greedy_allocation(L, X, budget, r):
    """Pair-consistent ranks taking the largest slice singular values first."""
    sv = np.array([np.linalg.svd(S, compute_uv=False) for S in _slices_loop(L, X)])
    pi = conj_pairing(L)
    if pi is None:
        pi = np.arange(L.p)
    ranks = np.zeros(L.p, dtype=int)
    left = budget
    for flat in np.argsort(-sv.ravel(), kind="stable"):
        k, l = divmod(int(flat), sv.shape[1])
        if ranks[k] != l:
            continue
        orb = sorted({k, int(pi[k])})
        if len(orb) <= left:
            ranks[orb] = l + 1
            left -= len(orb)
    return ranks


@dataclass
class CompetitorSpec:
    mode: str
    rank: int
    trials: int = 200
    seed: int = 0
    perturbation_scale: float = 0.05

    def __post_init__(self):
        if self.mode not in ("tubal", "brank"):
            raise TubalError(f"mode must be 'tubal' or 'brank', got {self.mode!r}")
        if self.trials < 1 or self.rank < 1:
            raise TubalError("trials and rank must be positive")


@dataclass
class OptimalityReport:
    dominated: bool
    worst_margin: float
    candidate_error: float
    best_competitor_error: float
    trials: int
    skipped: int


def random_search_optimality(L, A, candidate, spec):
    """Compare ``||A - candidate||_F`` against random admissible competitors.

    Competitors alternate between fresh random constructions of the allowed
    rank and re-projections of small perturbations of ``candidate`` or ``A``.
    """
    A = np.asarray(A, dtype=float)
    candidate = np.asarray(candidate, dtype=float)
    if candidate.shape != A.shape:
        raise DimensionMismatch(f"candidate shape {candidate.shape} differs from {A.shape}")
    m, n, p = A.shape
    r = min(m, n)
    limit = r if spec.mode == "tubal" else p * r
    if spec.rank > limit:
        raise TubalError(f"rank {spec.rank} exceeds the admissible maximum {limit}")

    rng = np.random.default_rng(spec.seed)
    normA = max(np.linalg.norm(A), 1e-300)
    err_c = float(np.linalg.norm(A - candidate))
    cand_ranks = slice_ranks(L, candidate)

    def ranks_for(X):
        if spec.mode == "tubal":
            return np.full(p, spec.rank)
        return _greedy_allocation(L, X, spec.rank, r)

    errors, skipped = [], 0
    for t in range(spec.trials):
        kind = t % 4
        if kind == 0:
            X = rng.standard_normal(A.shape) * normA / np.sqrt(A.size)
            if spec.mode == "tubal":
                ranks = np.full(p, spec.rank)
            else:
                ranks = _random_allocation(L, spec.rank, r, rng)
            comp, resid = _truncate_slices(L, X, ranks)
        elif kind == 1:
            Y = random_orthogonal_tubal(L, m, rng)
            Z = random_orthogonal_tubal(L, n, rng)
            X = _sandwich(L, Y, A, Z)
            comp, resid = _truncate_slices(L, X, ranks_for(X))
        else:
            base = candidate if kind == 2 else A
            E = rng.standard_normal(A.shape)
            eps = spec.perturbation_scale * normA * rng.uniform(0.001, 1.0)
            X = base + eps * E / np.linalg.norm(E)
            if kind == 2 and spec.mode == "brank" and cand_ranks.sum() <= spec.rank:
                ranks = cand_ranks
            else:
                ranks = ranks_for(X)
            comp, resid = _truncate_slices(L, X, ranks)
        if resid > 1e-8 * normA:
            skipped += 1
            continue
        errors.append(float(np.linalg.norm(A - comp)))

    errors = np.array(errors)
    if errors.size == 0:
        return OptimalityReport(True, np.inf, err_c, np.inf, spec.trials, skipped)
    margin = float(np.min(errors) - err_c)
    return OptimalityReport(margin >= -1e-9, margin, err_c, float(np.min(errors)), spec.trials, skipped)


def _sandwich(L, Y, A, Z):
    # Y *_L A *_L Z^H slice-wise, done with loops to stay off the main path
    Yh, Ah, Zh = _slices_loop(L, Y), _slices_loop(L, A), _slices_loop(L, Z)
    out = np.stack([Yh[k] @ Ah[k] @ Zh[k].conj().T for k in range(L.p)])
    return _unslice_loop(L, out).real
