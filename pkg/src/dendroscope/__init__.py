"""Kaleidoscopic groups on finite dendrite truncations.

Finite permutation groups, tree models of the order-n universal dendrite,
colorings with their local-action cocycle, orbit classification of
branch-vertex tuples, and the exact cohomological computations attached to
the local group.
"""

from .cohomology import (
    Cochain1,
    Cochain2,
    build_omega,
    coboundary0,
    coboundary1,
    cocycle_space_basis,
    cocycle_space_rank,
    generosity_coboundary,
    is_cocycle2,
    is_invariant,
    verify_omega,
)
from .coloring import (
    Coloring,
    DefectReport,
    color_from,
    kaleidoscopic_defects,
    random_coloring,
    recolor_doubly_transitive,
    uniform_coloring,
)
from .dendrite import (
    DendriteModel,
    Direction,
    between,
    build_model,
    center,
    center_closure,
    component_of,
    components_determined_by,
    path,
)
from .errors import (
    BetweennessViolation,
    BudgetExceeded,
    CapExceeded,
    DendroscopeError,
    NoColorIsomorphism,
    NotCenterClosed,
    NotDoublyTransitive,
    ParseError,
    SameVertex,
)
from .kgroup import (
    Automorphism,
    PartialMap,
    count_orbits,
    extend_partial,
    is_member,
    local_action,
    local_action_profile,
    same_orbit,
    split_gamma,
)
from .permgroup import (
    Perm,
    PermGroup,
    closure,
    count_orbits_on_tuples,
    group_catalog,
    is_generously_transitive,
    is_primitive,
    is_semi_generous,
    orbits_on_points,
    perm_groups_isomorphic,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
