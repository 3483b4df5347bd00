"""Gadget constructions: the 2-SAT(3) reduction, perfect-packing variants,
the instance selector, the weak composition, and random generators."""

from tripack.gadgets.cnf import CnfFormula, Literal
from tripack.gadgets.compose import CompositionLayout, compose, compose_forward_packing
from tripack.gadgets.generators import gen_linear, gen_random_tournament, gen_sat3, gen_sparse
from tripack.gadgets.perfect import (
    build_perfect_2sat3,
    build_perfect_3sat3,
    perfect_packing_2sat3,
    perfect_packing_3sat3,
)
from tripack.gadgets.reduction import (
    GadgetLayout,
    build_2sat3_gadget,
    canonical_variable_triangles,
    extract_assignment,
    packing_from_assignment,
    restructure_clause_blocks,
    restructure_variable_blocks,
)
from tripack.gadgets.selector import SelectorLayout, build_selector, selector_leftover_check, selector_select
