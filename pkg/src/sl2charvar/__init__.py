"""Exact SL2 character varieties of <a, b | a^n1 b^m1 a^n2 b^m2>.

Chebyshev-type polynomials c_n, d_n, cyclotomic arithmetic, the trace
algebra, component ideals with Groebner certificates, a structural
classifier, weak integrality verdicts and a brute-force matrix oracle.
"""

from .chebyshev import IntPoly, cheb_gcd, cheb_pair
from .classifier import classify_all, condition_C, formula_dim, intersection_graph
from .cyclo import CycloElt, RootOfUnity, RootTrace
from .integrality import gamma_valuations, weak_integrality
from .oracle import build_rep, check_word, enumerate_points
from .trace_algebra import GroupPresentation, Word

__all__ = [
    "CycloElt",
    "GroupPresentation",
    "IntPoly",
    "RootOfUnity",
    "RootTrace",
    "Word",
    "build_rep",
    "cheb_gcd",
    "cheb_pair",
    "check_word",
    "classify_all",
    "condition_C",
    "enumerate_points",
    "formula_dim",
    "gamma_valuations",
    "intersection_graph",
    "weak_integrality",
]
