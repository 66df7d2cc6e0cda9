"""Brownian-type block operators over a commuting positive pair.

The package builds block operators T = [[V, E], [0, Q]] from finite spectral
data, computes the joint spectrum of (|Q|, |E|) as a finite point set, and
answers operator-class questions (subnormal, m-contractive, m-expansive,
m-isometric, Brownian, ...) by region tests on that set, cross-checked by an
independent moment oracle.
"""

from .errors import (
    BrownianCriteriaMismatch,
    CommutatorTooLarge,
    DimensionMismatch,
    EmptyFlatPart,
    EmptyGamma,
    EmptySharpPart,
    EmptySpectrum,
    ENormExceedsOne,
    HeadroomExceeded,
    HypothesisViolated,
    ImageOutsideQuadrant,
    InsufficientLength,
    ModelFormatError,
    ModulusConstraintViolated,
    NegativeCoordinate,
    NonHermitianInput,
    NotLeftInvertible,
    NotPositiveSemidefinite,
    NotQuasiBrownian,
    PreconditionViolated,
    QbsError,
    SEqualsOne,
)
from .linalg import DEFAULT_EPS, hermitian_eig, is_psd, modulus, opnorm, simultaneous_diagonalize
from .jointspec import (
    JointSpectrum,
    SpectralPoint,
    inner_radius,
    joint_spectrum,
    product_vanishes,
    projections,
    radius,
    spectral_map,
    spectrum_from_csv,
    spectrum_to_csv,
    union,
)
from .model import (
    AtomKind,
    AtomModel,
    ClassQReport,
    PairModel,
    QAtom,
    ShiftEmbedding,
    atom_spectra,
    build_from_pair,
    compose,
    omega,
    operator_norm,
    power,
    realize_spectrum,
    scale_entries,
    validate_class_q,
)
from .regions import (
    CONTRACTION,
    DUAL_SUBNORMAL,
    EXPANSION,
    ISOMETRY,
    SUBNORMAL,
    TWO_ISOMETRY,
    BrownianDecomposition,
    BrownianReport,
    ClassificationReport,
    RegionId,
    RegionKind,
    brownian_decomposition,
    classify,
    classify_brownian,
    completely_hypercontractive,
    completely_hyperexpansive,
    delta_regular,
    left_invertibility_margin,
    m_contractive,
    m_expansive,
    m_isometric,
    region_membership,
)
from .moments import (
    AtomicMeasure,
    MomentSequence,
    OracleResult,
    finite_difference,
    mu_weights,
    phi,
    point_subnormality_oracle,
    polynomial_perturbation_test,
    stieltjes_oracle,
)
from .dual import cauchy_dual, dual_spectral_map
from .pencils import (
    IntervalKind,
    SubnormalityInterval,
    beta_dagger,
    beta_sub,
    pencil_scan,
    sub_E,
    sub_Q,
)
from .io import load_model, model_from_json, model_to_json, save_model

__version__ = "0.1.0"

__all__ = [
    "AtomKind",
    "AtomModel",
    "AtomicMeasure",
    "BrownianCriteriaMismatch",
    "BrownianDecomposition",
    "BrownianReport",
    "CONTRACTION",
    "ClassQReport",
    "ClassificationReport",
    "CommutatorTooLarge",
    "DEFAULT_EPS",
    "DUAL_SUBNORMAL",
    "DimensionMismatch",
    "ENormExceedsOne",
    "EXPANSION",
    "EmptyFlatPart",
    "EmptyGamma",
    "EmptySharpPart",
    "EmptySpectrum",
    "HeadroomExceeded",
    "HypothesisViolated",
    "ISOMETRY",
    "ImageOutsideQuadrant",
    "InsufficientLength",
    "IntervalKind",
    "JointSpectrum",
    "ModelFormatError",
    "ModulusConstraintViolated",
    "MomentSequence",
    "NegativeCoordinate",
    "NonHermitianInput",
    "NotLeftInvertible",
    "NotPositiveSemidefinite",
    "NotQuasiBrownian",
    "OracleResult",
    "PairModel",
    "PreconditionViolated",
    "QAtom",
    "QbsError",
    "RegionId",
    "RegionKind",
    "SEqualsOne",
    "SUBNORMAL",
    "ShiftEmbedding",
    "SpectralPoint",
    "SubnormalityInterval",
    "TWO_ISOMETRY",
    "atom_spectra",
    "beta_dagger",
    "beta_sub",
    "brownian_decomposition",
    "build_from_pair",
    "cauchy_dual",
    "classify",
    "classify_brownian",
    "completely_hypercontractive",
    "completely_hyperexpansive",
    "compose",
    "delta_regular",
    "dual_spectral_map",
    "finite_difference",
    "hermitian_eig",
    "inner_radius",
    "is_psd",
    "joint_spectrum",
    "left_invertibility_margin",
    "load_model",
    "m_contractive",
    "m_expansive",
    "m_isometric",
    "model_from_json",
    "model_to_json",
    "modulus",
    "mu_weights",
    "omega",
    "operator_norm",
    "opnorm",
    "pencil_scan",
    "phi",
    "point_subnormality_oracle",
    "polynomial_perturbation_test",
    "power",
    "product_vanishes",
    "projections",
    "radius",
    "realize_spectrum",
    "region_membership",
    "save_model",
    "scale_entries",
    "simultaneous_diagonalize",
    "spectral_map",
    "spectrum_from_csv",
    "spectrum_to_csv",
    "stieltjes_oracle",
    "sub_E",
    "sub_Q",
    "union",
    "validate_class_q",
]
