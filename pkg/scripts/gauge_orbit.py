"""Walk a seeded gauge orbit of a flat candidate and watch the invariants:
the residual stays zero at every step and the exponential class is carried
by the integrated flow.

    python3 scripts/gauge_orbit.py --steps 4 --seed 7
"""

import argparse
import random
import sys
from fractions import Fraction

from necklie import (LambdaElement, TruncationProfile, char_class, gauge_act,
                     homotopy_check, mc_residual, two_dim_space)
from necklie.exprs import render_chain_terms, render_element
from necklie.mc import as_candidate

X, XI = 0, 1
PARAM_POOL = [(0, 0, ((X, X, XI),)), (0, 0, ((XI, XI, XI),)),
              (0, 1, ((XI,),)), (1, 0, ((XI,),))]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--steps", type=int, default=4)
    ap.add_argument("--seed", type=int, default=2718)
    args = ap.parse_args(argv)

    rng = random.Random(args.seed)
    space = two_dim_space()
    profile = TruncationProfile(L=6, K=3, G=2, N=2)
    x = LambdaElement(space, "lgv", profile,
                      {(0, 0, ((X, X),)): Fraction(2),
                       (1, 0, ((X, X),)): Fraction(-1)})
    print("start:", render_element(x))
    print("residual:", render_element(mc_residual(as_candidate(x))))
    for step in range(1, args.steps + 1):
        y = LambdaElement(space, "lgv", profile, {
            PARAM_POOL[rng.randrange(len(PARAM_POOL))]:
                Fraction(rng.randint(1, 4), rng.randint(1, 3))})
        rep = homotopy_check(y, x, profile)
        x = gauge_act(y, x).value
        res = mc_residual(as_candidate(x))
        print(f"step {step}: y = {render_element(y)}")
        print(f"  flowed element now has {len(x.terms)} terms")
        print(f"  residual {render_element(res)}; homotopy identities "
              + ("hold" if rep.passed else "FAIL"))
        if not (res.is_zero() and rep.passed):
            return 1
    endpoint = char_class(as_candidate(x))
    unit = render_chain_terms(space, {k: c for k, c in endpoint.terms.items()
                                      if len(k[2]) <= 1})
    print(f"endpoint class: {len(endpoint.terms)} chain terms; "
          f"single-block part {unit}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
