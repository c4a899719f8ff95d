"""Lie-algebra, curvature and volume-bound machinery for hyperbolic
n-orbifolds over the real, complex and quaternionic fields."""

from .basis import BasisElement, LieAlgebraModel, build_basis, expected_dim
from .bounds import (
    BoundReport,
    BoundSpec,
    ball_volume,
    bound_value,
    hurwitz_order_bound,
    q_bound_first_principles,
    published_table,
    vol_sp_n_times_sp1,
)
from .curvature import (
    basis_plane_scan,
    complex_structure_apply,
    connection,
    curvature_via_closed_forms,
    curvature_via_definition,
    default_scaled_metric,
    fit_metric_scale,
    global_curvature_scan,
    printed_curvature_bound,
    sectional_curvature,
    verify_holomorphic_normalization,
)
from .identities import verify_bracket_identities
from .logvalue import LogValue
from .metric import (
    canonical_metric,
    estimate_C1_C2,
    inner_product,
    killing_form,
    scaled_metric,
    verify_killing_invariance,
)
from .quaternion import (
    GroundField,
    Quaternion,
    QuaternionMatrix,
    is_in_sp_lie_algebra,
    mat_bracket,
    quat_mul,
)
from .special import sin_power_integral, wang_F, wang_root
from .structure import ad_matrix, structure_constants, verify_cartan_relations
from .verify import run_verification

__version__ = "0.1.0"
