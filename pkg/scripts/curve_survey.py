"""Survey gamma_{a,b}(C, O_C(e)) on the shipped curves for small a + b.

Prints one line per cell with rank, cokernel, the kernel lower bound from
eta and whether the twist is obstructed for the Euler presentation.
"""

import argparse

from wgauss import gauss_ci
from wgauss.specs import PRESETS, preset


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--curves", nargs="+", default=sorted(PRESETS), choices=sorted(PRESETS))
    parser.add_argument("-e", type=int, default=1)
    parser.add_argument("--max-t", type=int, default=4)
    args = parser.parse_args()

    print(f"{'curve':<18} {'a':>2} {'b':>2} {'dom':>5} {'cod':>5} {'rank':>5} {'coker':>5} {'eta':>5}  obstructed")
    for name in args.curves:
        ci = preset(name)
        for s in range(2, args.max_t + 1):
            for a in range(1, s):
                r = gauss_ci(ci, args.e, a, s - a)
                print(
                    f"{name:<18} {a:>2} {s - a:>2} {r.domain_dim:>5} {r.codomain_dim:>5} "
                    f"{r.rank:>5} {r.coker_dim:>5} {r.kernel_lower_bound_eta:>5}  {r.obstructed}"
                )


if __name__ == "__main__":
    main()
