"""Exact truncated power series over Q(i) for formal CR geometry.

Normal-form manifolds, iterated Segre maps with finite-type certificates,
reflection identities for real-valued meromorphic maps, and a constancy
decision procedure with an independent linear-algebra oracle.
"""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .scalars import GaussianRational, I, ONE, ZERO, as_gaussian
from .series import Block, TruncatedSeries, VariableSpace, make_block
from .parser import constant_value, parse_expression, parse_series
from .manifold import (
    DefiningSystem,
    NormalManifold,
    map_space,
    normal_space,
    rho_space,
    solve_graph_from_rho,
    transverse_space,
    validate_defining_system,
    validate_normal_form,
)
from .segre import (
    FiniteTypeVerdict,
    RankCertificate,
    finite_type_search,
    generic_rank,
    jacobian,
    minor_series,
    revalidate_certificate,
    segre_v1,
    segre_vj,
)
from .reflection import (
    IdentityReport,
    MeromorphicMap,
    check_real_on_M,
    check_transverse_dependence,
    check_unit_a,
    compute_unit_a,
    reduce_to_transverse,
    verify_cross_identity,
)
from .constancy import (
    Constancy,
    ConstancyVerdict,
    check_orbit_vanishing,
    decide_constancy,
    enumerate_real_holomorphic,
    verify_prolongation,
)
from .inputs import load_manifold, load_map
