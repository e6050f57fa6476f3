"""Tubal scalars: real ``p``-vectors forming the commutative ring ``K_p(L)``.

All ring operations run in the transform domain and return the real part,
after checking that the discarded imaginary part is negligible.
"""
import numpy as np

from . import transform as tf
from .errors import (
    DimensionMismatch,
    NotDoublyRealPreserving,
    NotInvertible,
    NotRealPreserving,
    RealnessViolation,
)

REAL_TOL = 1e-9
SYM_TOL = 1e-8


def _tube(L, a):
    a = np.asarray(a, dtype=float)
    if a.ndim != 1 or a.shape[0] != L.p:
        raise DimensionMismatch(f"expected a tube of length {L.p}, got shape {a.shape}")
    return a


def require_real_preserving(L):
    if not L.cls.is_real_preserving:
        raise NotRealPreserving(f"{L!r} is not real-preserving")


def require_doubly_real_preserving(L):
    if not L.cls.is_doubly_real_preserving:
        raise NotDoublyRealPreserving(f"{L!r} is not doubly real-preserving")


def tprod_complex(L, a, b):
    """``L^{-1}((L a) o (L b))`` without any realness handling."""
    return tf.inverse(L, tf.forward(L, a) * tf.forward(L, b))


def tprod(L, a, b):
    """The product ``a (.)_L b`` of two tubal scalars."""
    a, b = _tube(L, a), _tube(L, b)
    c = tprod_complex(L, a, b)
    resid = float(np.max(np.abs(c.imag)))
    if not L.cls.is_real_preserving:
        raise NotRealPreserving(f"{L!r} is not real-preserving", value=c, residual=resid)
    if resid > REAL_TOL * (modulus(a) * modulus(b) + 1):
        raise RealnessViolation(f"product has imaginary residual {resid:.3e}", value=c, residual=resid)
    return c.real


def unit(L):
    """The unit ``e_L = L^{-1} 1``, i.e. the row sums of ``H``."""
    require_real_preserving(L)
    e = L.H.sum(axis=1)
    resid = float(np.max(np.abs(e.imag)))
    if resid > REAL_TOL * (np.abs(e).max() + 1):
        raise RealnessViolation(f"unit has imaginary residual {resid:.3e}", value=e, residual=resid)
    return e.real


def invert(L, a):
    """Multiplicative inverse; exists iff no component of ``L a`` vanishes."""
    require_real_preserving(L)
    a = _tube(L, a)
    fa = tf.forward(L, a)
    if np.min(np.abs(fa)) <= 1e-12 * modulus(a):
        raise NotInvertible("tubal scalar has a vanishing transform-domain component")
    c = tf.inverse(L, 1.0 / fa)
    resid = float(np.max(np.abs(c.imag)))
    if resid > REAL_TOL * (np.abs(c).max() + 1):
        raise RealnessViolation(f"inverse has imaginary residual {resid:.3e}", value=c, residual=resid)
    return c.real


def transpose_scalar(L, a):
    """The tubal transpose ``L^{-1} conj(L a)``, computed as a real matvec."""
    require_doubly_real_preserving(L)
    return L.cls.psi @ _tube(L, a)


def _normalized(a):
    n = modulus(a)
    return a / n if n >= 1e-300 else a


def is_symmetric(L, a, tol=SYM_TOL):
    require_doubly_real_preserving(L)
    a = _normalized(_tube(L, a))
    return bool(np.max(np.abs(L.cls.psi @ a - a)) <= tol)


def is_psd(L, a, tol=SYM_TOL):
    """Symmetric with a real, nonnegative transform-domain image."""
    if not is_symmetric(L, a, tol):
        return False
    fa = tf.forward(L, _normalized(_tube(L, a)))
    return bool(np.max(np.abs(fa.imag)) <= tol and np.min(fa.real) >= -tol)


def modulus(a):
    return float(np.linalg.norm(np.asarray(a, dtype=float)))
