"""Dynamically irreducible sets of monic quadratics over finite fields."""
from .closure import (
    ClosureReport,
    DISetInstance,
    Verdict,
    bound_B,
    brute_force_check,
    closure_test,
    gamma_two_to_one,
    single_test,
)
from .ff import FieldCtx, FieldElem, find_modulus
from .poly import DensePoly, MonicQuad, compose_chain, poly_is_irreducible, quad_eval
from .search import m_upper_bound, max_di_search

__all__ = [
    "ClosureReport",
    "DISetInstance",
    "DensePoly",
    "FieldCtx",
    "FieldElem",
    "MonicQuad",
    "Verdict",
    "bound_B",
    "brute_force_check",
    "closure_test",
    "compose_chain",
    "find_modulus",
    "gamma_two_to_one",
    "m_upper_bound",
    "max_di_search",
    "poly_is_irreducible",
    "quad_eval",
    "single_test",
]
