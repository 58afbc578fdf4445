"""Print the conifold correlator, the product Z(z, t^2) and the t = 0 series."""

import argparse

from chl import conifold


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-K", type=int, default=8)
    ap.add_argument("--polynomial", action="store_true", help="also run the polynomial route (slow past K = 3)")
    args = ap.parse_args()
    res = conifold.conifold_check(args.K)
    for k, (a, b) in enumerate(zip(res["full"].coeffs, res["product"].coeffs)):
        print(f"z^{k}: {a.short():60s} {'==' if a == b else '!='} product")
    print("t=0:", ", ".join(res["macmahon"]), "MacMahon" if res["macmahon_matches"] else "MISMATCH")
    print("Γ⁻ string vs lemma product:", res["lemma"])
    if args.polynomial:
        print("polynomial route agrees:", conifold.full_correlator_polynomial(args.K) == res["full"])


if __name__ == "__main__":
    main()
