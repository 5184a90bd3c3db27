"""Weil-style pairing on p-torsion over the dual numbers F_p[eps],
and the anomalous-curve discrete-log attacks it unifies."""

from .curve import INFINITY, Curve, Point, count_points, find_anomalous, hasse_interval
from .dlp import (
    AttackResult,
    DlpInstance,
    attack_lift,
    attack_pairing,
    attack_rueck,
    attack_semaev,
    canonical_witness,
    solve,
    torsion_preserving_lifts,
)
from .dual_curve import DualCurve, DualPoint
from .errors import DualPairError
from .fields import DualNumber, Fp, FpElement
from .isogeny import (
    Isogeny,
    check_functoriality,
    compute_m,
    division_polynomial,
    find_cyclic_isogeny,
    frobenius_isogeny,
    identity_isogeny,
    multiplication_isogeny,
    velu,
    velu_from_kernel_polynomial,
)
from .miller import (
    binary_chain,
    h_eval,
    incremental_chain,
    miller_eval,
    tail_chain,
    weil_pairing,
)
from .pairing import (
    PairingValue,
    lifted_pairing,
    pairing_direct,
    pairing_rueck,
    pairing_semaev,
    rueck_slope_sum,
    semaev_coefficient,
    semaev_log_derivative,
    theta_pairing,
)
from .poly import Polynomial, cubic_roots

__version__ = "0.1.0"
