"""Finite quandles, their cohomology and knot invariants, and Moufang loops."""
from .permgroups import Permutation, PermGroup, compose, generate, orbits, is_transitive, quotient_is_cyclic
from .quandle import CayleyTable, verify_quandle, is_quandle, classify
from .canonical import canonical_form, are_isomorphic, automorphism_group

__version__ = "0.1.0"
