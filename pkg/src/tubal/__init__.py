"""Tubal-matrix algebra for third-order real tensors under invertible transforms.

Tensors are plain ``(m, n, p)`` float arrays; tubal scalars are length-``p``
arrays.  The transform ``L`` is a :class:`~tubal.transform.Transform`.
"""
from . import io, oracle
from .errors import (
    DimensionMismatch,
    InvalidDimension,
    InvalidSpec,
    NoConvergence,
    NotDoublyRealPreserving,
    NotInvertible,
    NotRealPreserving,
    NotUnitary,
    ParseError,
    RankOutOfRange,
    RealnessViolation,
    SingularTransform,
    TubalError,
    ZeroTensor,
)
from .linalg import (
    are_orthogonal,
    fold,
    frobenius,
    from_slices,
    identity,
    is_normalized,
    is_orthogonal,
    mat_tprod,
    mat_transpose,
    slices,
    unfold,
    vec_inner,
)
from .scalar import invert, is_psd, is_symmetric, modulus, tprod, tprod_complex, transpose_scalar, unit
from .transform import (
    Transform,
    TransformClass,
    builtin,
    classify,
    compose,
    forward,
    from_matrix,
    inverse,
    make_dct,
    make_dft,
    make_random_orthogonal,
    make_unitary_dft,
)
from .tsvd import (
    SDiagonal,
    SpectrumReport,
    TsvdFactors,
    b_rank,
    brank_cut_is_real,
    complex_svd,
    g_part,
    rank_factorization,
    spectrum,
    spectrum_from,
    truncate_brank,
    truncate_tubal,
    tsvd,
    tubal_rank,
    validate_s_diagonal,
)

__version__ = "0.1.0"
