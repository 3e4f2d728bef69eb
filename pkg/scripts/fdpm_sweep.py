"""Orbital diameters of F*.S_r on fully deleted permutation modules over a grid of (r, q0)."""
import argparse
import time

from orbdiam.bounds import analytic_lower_bounds
from orbdiam.linalg import DEFAULT_SPACE_CAP, SpaceCapError
from orbdiam.orbgraph import orbdiam_all
from orbdiam.repfactory import adjoin_scalars, fully_deleted_rep


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--r", type=int, nargs="+", default=list(range(5, 12)))
    ap.add_argument("--q", type=int, nargs="+", default=[2, 3, 4, 5])
    ap.add_argument("--alt", action="store_true", help="use A_r instead of S_r")
    ap.add_argument("--max-space", type=int, default=DEFAULT_SPACE_CAP)
    args = ap.parse_args()

    print(f"{'r':>3} {'q0':>3} {'n':>3} {'rank':>5} {'diam':>5} {'permalt':>8} {'secs':>7}")
    for q0 in args.q:
        for r in args.r:
            rep = adjoin_scalars(fully_deleted_rep(r, args.alt, q0))
            t = time.perf_counter()
            try:
                res = orbdiam_all(rep, cap=args.max_space)
            except SpaceCapError:
                print(f"{r:>3} {q0:>3} {rep.n:>3}   (above cap)")
                continue
            lb = analytic_lower_bounds(f"A{r}", rep.n, q0, module="fdpm").get("permalt").value
            print(f"{r:>3} {q0:>3} {rep.n:>3} {res.rank:>5} {res.orbital_diameter:>5} {lb:>8} "
                  f"{time.perf_counter() - t:>7.2f}")


if __name__ == "__main__":
    main()
