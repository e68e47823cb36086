"""Exact arithmetic, strand-diagram rewriting, and the conjugacy decision
for the Thompson-like groups V_n(H)."""

from .census import (
    CongruenceInstance,
    class_census_experiment,
    count_congruence_solutions,
    count_order_p_classes,
    nonisomorphism_witness,
    oracle_conjugate,
)
from .closed import (
    ClosedDiagram,
    FreeLoop,
    are_conjugate,
    close,
    closed_equal,
    conjugating_equivalent,
    is_torsion,
    reduce_closed,
    reduced_closure,
    torsion_order,
)
from .diagrams import (
    StrandDiagram,
    build_diagram,
    concatenate,
    cut_diagram,
    cut_to_element,
    diagram_equal,
    identity_diagram,
)
from .elements import (
    TreePairElement,
    compose,
    element_order,
    equal_elements,
    eval_prefix,
    identity_element,
    invert,
    reduce_element,
    reduced_elements,
)
from .io import element_from_json, element_to_json, subgroup_from_spec
from .perms import Perm, Subgroup
from .rewriting import Redex, apply_inverse, apply_reduction, find_redexes, reduce
from .trees import common_expansion, expand_leaf, format_tree, leaf_addresses, parse_tree

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
