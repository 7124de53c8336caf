"""Sweep the lifting tower of a hamiltonian and tabulate what each level
offers: the obstruction class if the tower blocks, otherwise the dimension
of the affine space of extensions.

    python3 scripts/lift_tower.py --order 4
    python3 scripts/lift_tower.py --expr "1 w[x,x]" --space spaces/2d.json
"""

import argparse
import sys
import time

from necklie import SymplecticSpace, lift, one_dim_space, parse_hamiltonian
from necklie.exprs import render_element
from necklie.obstruction import (MCState, default_lift_profile,
                                 embed_hamiltonian, extension_space,
                                 obstruction_class)


def sweep(h, variant, order):
    profile = default_lift_profile(h.space, variant, order)
    state = MCState([embed_hamiltonian(h, variant, profile)])
    print(f"variant {variant}, profile L={profile.L} K={profile.K} "
          f"G={profile.G} N={profile.N} P={profile.P}")
    for level in range(1, order + 1):
        t0 = time.time()
        rep = obstruction_class(state)
        if not rep.class_vanishes:
            print(f"  level {level}: BLOCKED, o = "
                  f"{render_element(rep.cocycle)}  ({time.time() - t0:.2f}s)")
            return False
        space = extension_space(state, _report=rep)
        dim = len(space.parameter_basis)
        print(f"  level {level}: extensions form a dim-{dim} affine space, "
              f"particular = {render_element(space.particular)}  "
              f"({time.time() - t0:.2f}s)")
        state = state.extended(space.extension())
    low = state.residual().min_filtration_order()
    print(f"  reached order {order}; residual "
          + ("vanishes" if low is None else f"starts at order {low}"))
    return True


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--expr", default="1 w[t,t,t]",
                    help="hamiltonian expression (default the cubic)")
    ap.add_argument("--space", help="space JSON (default one generator)")
    ap.add_argument("--order", type=int, default=4)
    ap.add_argument("--variant", choices=("hq2", "lg", "lgv"), default=None,
                    help="run a single variant instead of both towers")
    args = ap.parse_args(argv)
    space = (SymplecticSpace.load(args.space) if args.space
             else one_dim_space())
    h = parse_hamiltonian(args.expr, space)
    variants = (args.variant,) if args.variant else ("lgv", "lg")
    ok = True
    for variant in variants:
        ok = sweep(h, variant, args.order) and ok
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
