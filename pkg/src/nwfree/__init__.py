"""Exact-arithmetic rank-one Cartan-free modules over Nappi-Witten type algebras.

Subpackages, bottom up: exactpoly (rationals, sparse polynomials, shifts),
liealg (structure constants of the four algebras), modfam (module families
as action evaluators), verify (module-axiom checker), classify (inverse
problem, twists, isomorphism), irreducible (verdicts, certificates,
witnesses, brute-force oracle), specdsl (text formats and the CLI).
"""

__version__ = "0.1.0"
