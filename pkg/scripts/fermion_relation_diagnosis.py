"""Compare the displayed mixed X+/X- relation with the one obtained from the contractions.

For each index pair (n, m) on the vacuum and on q_1(x), print whether the
displayed form and the normal-ordered form vanish, and the lowest surviving
term of the displayed form.
"""

import argparse

from chl import coupled
from chl.coeff import ONE
from chl.partitions import EMPTY, Partition


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--range", type=int, default=2)
    args = ap.parse_args()
    states = {
        "|0>": {(EMPTY, EMPTY): ONE},
        "q_1(x)": {(Partition((1,)), EMPTY): ONE},
    }
    idx = range(-args.range, args.range + 1)
    for label, terms in states.items():
        print(f"state {label}")
        for n in idx:
            for m in idx:
                shown = coupled.relation_mixed_as_printed("X", n, m, terms)
                normal = coupled.relation_mixed_normal("X", n, m, terms)
                w = coupled._witness(shown) if shown else ""
                print(f"  n={n:+d} m={m:+d}  displayed={'0' if not shown else 'nonzero'}  normal={'0' if not normal else 'nonzero'}  {w}")


if __name__ == "__main__":
    main()
