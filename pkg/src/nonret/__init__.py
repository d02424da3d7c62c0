"""Non-returning regular languages: witness DFAs, syntactic semigroups, atoms
and the state complexity of operations, with a harness that checks each
bound numerically."""

from .atoms import atom_bound, atom_complexity, atom_dfa, count_atoms, is_atom
from .automata import Dfa, Language, Nfa, complexity, make_dfa, minimize, parse_dfa
from .harness import CLAIMS, RunConfig, verify, verify_all
from .ops import BooleanOp, Mode, boolean, bound_for, product, reverse, star
from .transform import Transformation, closure, transition_semigroup
from .witness import DialectSpec, WitnessId, witness

__all__ = [
    "Dfa", "Nfa", "Language", "make_dfa", "minimize", "parse_dfa", "complexity",
    "Transformation", "closure", "transition_semigroup",
    "DialectSpec", "WitnessId", "witness",
    "atom_dfa", "is_atom", "count_atoms", "atom_complexity", "atom_bound",
    "BooleanOp", "Mode", "reverse", "star", "product", "boolean", "bound_for",
    "CLAIMS", "RunConfig", "verify", "verify_all",
]
