"""Tabulate analytic lower bounds for alternating and Lie-type groups."""
import argparse

from orbdiam.bounds import analytic_lower_bounds


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--alt", type=int, nargs="+", default=[5, 8, 10, 15, 20, 40, 80])
    ap.add_argument("--lie", nargs="+", default=["G2(5)", "G2(8)", "2B2(32)", "3D4(3)", "PSL5(4)",
                                                 "E8(2)"])
    args = ap.parse_args()
    print("alternating, not the fully deleted module")
    for r in args.alt:
        rep = analytic_lower_bounds(f"A{r}", None, None)
        b = rep.get("lowerdiamalt")
        print(f"  A{r:<4} d >= {b.value}   [{b.formula}]")
    print("fully deleted modules over GF(2)")
    for r in args.alt:
        b = analytic_lower_bounds(f"A{r}", None, 2, module="fdpm").get("permalt")
        print(f"  A{r:<4} d >= {b.value}   [{b.formula}]")
    print("Lie type, cross characteristic")
    for g in args.lie:
        b = analytic_lower_bounds(g, characteristic="cross").get("lowerdiamlie")
        print(f"  {g:<8} d >= {b.value}   [{b.formula}]")


if __name__ == "__main__":
    main()
