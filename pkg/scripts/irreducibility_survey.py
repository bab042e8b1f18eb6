"""Survey irreducibility verdicts and their supporting evidence.

For each spec in the grid: print the verdict, replay a reduction chain
from a sample seed when irreducible (or the witness ideal when not), and
cross-check against the brute-force orbit oracle.

    python3 scripts/irreducibility_survey.py
    python3 scripts/irreducibility_survey.py --seed-degree 3 --oracle-cap 6
"""

import argparse
import sys

from nwfree.exactpoly import Poly, monomials_upto
from nwfree.irreducible import (
    decide,
    format_certificate,
    format_witness,
    orbit_oracle,
    reduction_chain,
    witness,
)
from nwfree.modfam import (
    Vir00Spec,
    affvir,
    algebra_of,
    m0,
    m0g,
    mab,
    mbh,
    mg0,
    mhb,
    module_variables,
    mtilde,
    mtilde_f,
)

S = Poly.var(("s",), "s")
W0 = Poly.var(("w0",), "w0")


def survey_grid():
    one = Poly.one(("s",))
    return [
        ("Mg0 g=1", mg0(one)),
        ("Mg0 g=2", mg0(Poly.const(("s",), 2))),
        ("Mg0 g=s", mg0(S)),
        ("Mg0 g=s^2-s", mg0(S * S - S)),
        ("Mg0 g=s^2+1", mg0(S * S + one)),
        ("M0g g=3", m0g(Poly.const(("s",), 3))),
        ("Mhb (1,0,1)", mhb(1, 0, 1)),
        ("Mbh (2,-1,3)", mbh(2, -1, 3)),
        ("Mab (2,3)", mab(2, 3)),
        ("M0", m0()),
        ("MTilde over Mhb(1,0,1)", mtilde(mhb(1, 0, 1), 2, {1: 5, -1: 0}, 1)),
        ("MTilde over Mg0(s)", mtilde(mg0(S), 2, {1: 1, -1: 1}, 1)),
        ("MTildeF", mtilde_f({1: S * S, -1: S + S}, 1)),
        ("Vir00 lam=2 f=w0", Vir00Spec(2, W0)),
        ("AffVir over Mhb(1,0,1)", affvir(mhb(1, 0, 1), 2, 3, 1)),
    ]


def sample_seed(spec, degree):
    variables = module_variables(spec)
    return monomials_upto(variables, degree)[-1]


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seed-degree", type=int, default=2)
    parser.add_argument("--oracle-cap", type=int, default=5)
    parser.add_argument("--evidence", action="store_true", help="print chains and witnesses")
    args = parser.parse_args(argv)

    disagreements = 0
    for name, spec in survey_grid():
        verdict = decide(spec)
        seed = sample_seed(spec, args.seed_degree)
        reachable = orbit_oracle(spec, seed, args.seed_degree, args.oracle_cap)
        # the oracle is one-sided: False under a cap is absence, not proof
        agree = reachable if verdict.irreducible else True
        mark = "" if agree else "  <-- oracle disagrees"
        print(
            f"{name:28s} {verdict.label:11s} derived={str(verdict.derived).lower():5s} "
            f"oracle[{seed}]={str(reachable).lower()}{mark}"
        )
        if not agree:
            disagreements += 1
        if args.evidence:
            alg = algebra_of(spec)
            if verdict.irreducible:
                print(format_certificate(reduction_chain(spec, seed), alg))
            else:
                print(format_witness(witness(spec), alg))
    return 1 if disagreements else 0


if __name__ == "__main__":
    sys.exit(main())
