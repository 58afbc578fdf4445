"""Run every verification suite at acceptance scale and print a status table."""

import argparse
import time

from chl.cli import RunConfig, run_suite

SUITES = [
    ("methods-agree", dict(max_size=6)),
    ("triangularity", dict(max_size=6)),
    ("fermion", dict(index_range=3, degree_cap=4, relation="derived")),
    ("fermion", dict(index_range=3, degree_cap=4, relation="printed")),
    ("gamma-action", dict(max_size=4, order=4)),
    ("cross-commutation", dict(degree_cap=4)),
    ("rll", dict(nmax=3)),
    ("rtt-abcd", dict(m1=1, m2=1, nmax=2)),
    ("b-equals-h", dict(m1=2, m2=2, n=2)),
    ("psi-tilde", dict(m1=2, m2=2, n=2)),
    ("psi", dict(m1=1, m2=1, n=2, nmax=2)),
    ("hperp-h", dict(m1=1, degree_cap=3)),
    ("hperp-h", dict(m1=2, degree_cap=3)),
    ("conifold", dict(order=8)),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--only", help="run suites whose name contains this string")
    args = ap.parse_args()
    for name, kw in SUITES:
        if args.only and args.only not in name:
            continue
        cfg = RunConfig(command="verify", target=name, **kw)
        t0 = time.perf_counter()
        cases = run_suite(cfg)
        dt = time.perf_counter() - t0
        bad = [c for c in cases if c["status"] != "pass"]
        extra = " ".join(f"{k}={v}" for k, v in kw.items())
        print(f"{name:18s} {extra:40s} {len(cases) - len(bad):6d}/{len(cases):<6d} {'PASS' if not bad else 'FAIL'}  {dt:6.1f}s")
        if bad:
            print(f"    first failure: {bad[0]['key']}")


if __name__ == "__main__":
    main()
