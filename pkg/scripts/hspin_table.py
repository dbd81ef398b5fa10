"""Table of the rank squeeze for mu_h when h^0(L) = 1.

For every genus g and root order h with h | 2g - 2, list h^0(K - L), the
lower and upper rank bounds and the codimension (g-1)(h-2)/h.
"""

import argparse

from wgauss.verify import check_theorem34_identity


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-g", type=int, default=40)
    parser.add_argument("--max-h", type=int, default=10)
    args = parser.parse_args()

    print(f"{'g':>3} {'h':>3} {'h0(K-L)':>8} {'lower':>6} {'upper':>6} {'codim':>6}  verdict")
    for g in range(2, args.max_g + 1):
        for h in range(2, args.max_h + 1):
            if (2 * g - 2) % h:
                continue
            r = check_theorem34_identity(g, h)
            lo, hi = r.computed["squeeze"]
            print(f"{g:>3} {h:>3} {r.computed['h0_K_minus_L']:>8} {lo:>6} {hi:>6} {r.computed['codim']:>6}  {r.verdict}")


if __name__ == "__main__":
    main()
