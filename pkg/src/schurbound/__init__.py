"""Certified bounds for Schur multipliers on Schatten classes.

Exact p-adic invariants, finite-ring test matrices, polygon
scheduling, factorization-norm SDP bounds, and Legendre-series norms,
with a command-line front end for reproduction tables.
"""

from ._threads import apply_thread_cap

# must run before numpy comes in through any submodule below
apply_thread_cap()

from .certify import (
    Certificate,
    CertificateEntry,
    build_alpha_beta,
    classify_residue,
    governing_data,
    obstruction_certificate,
)
from .errors import ConsistencyError, InputError, SchedulerError
from .gamma2 import FactorizationResult, factorization_norm
from .legendre import (
    DecayCertificate,
    DecayRate,
    RealCartanLabel,
    ScalingFit,
    SeriesNorm,
    backend_name,
    legendre,
    octave_block_sums,
    real_decay_certificate,
    scaling_fit,
    tdelta_diff_norm,
)
from .multiplier import (
    NormSandwich,
    NormWitness,
    multiplier_norm_bounds,
    multiplier_norm_exact,
    multiplier_norm_lower,
)
from .padic import QMatrix, build_D, cartan_invariants, random_unimodular, valuation
from .polygons import Polygon, lambda_m_path, polygon_check, scaled_polygon
from .residue import (
    AdditiveCharacter,
    ResidueRing,
    TkParams,
    build_Tk,
    epsilon_rate,
    tk_diff_norm_closed_form,
    tk_diff_norm_from_spectrum,
    tk_diff_spectrum,
    verify_tk_diff,
)
from .schatten import polar_witness, schatten_norm, schur_apply, trace_pairing
from .selftest import CheckResult, run_all
from .symbols import Partition, amplify_symbol, block_average, sample_symbol

__version__ = "1.0.0"

__all__ = [
    "AdditiveCharacter",
    "Certificate",
    "CertificateEntry",
    "CheckResult",
    "ConsistencyError",
    "DecayCertificate",
    "DecayRate",
    "FactorizationResult",
    "InputError",
    "NormSandwich",
    "NormWitness",
    "Partition",
    "Polygon",
    "QMatrix",
    "RealCartanLabel",
    "ResidueRing",
    "ScalingFit",
    "SchedulerError",
    "SeriesNorm",
    "TkParams",
    "amplify_symbol",
    "backend_name",
    "block_average",
    "build_D",
    "build_Tk",
    "build_alpha_beta",
    "cartan_invariants",
    "classify_residue",
    "epsilon_rate",
    "factorization_norm",
    "governing_data",
    "lambda_m_path",
    "legendre",
    "multiplier_norm_bounds",
    "multiplier_norm_exact",
    "multiplier_norm_lower",
    "obstruction_certificate",
    "octave_block_sums",
    "polar_witness",
    "polygon_check",
    "random_unimodular",
    "real_decay_certificate",
    "run_all",
    "sample_symbol",
    "scaled_polygon",
    "scaling_fit",
    "schatten_norm",
    "schur_apply",
    "tdelta_diff_norm",
    "trace_pairing",
    "tk_diff_norm_closed_form",
    "tk_diff_norm_from_spectrum",
    "tk_diff_spectrum",
    "valuation",
    "verify_tk_diff",
    "__version__",
]
