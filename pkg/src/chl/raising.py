"""Raising/lowering-operator expansion on integer index vectors.

Each factor acts on index vectors: ``R_ij`` moves one unit from entry ``j`` to
entry ``i`` (``i < j``, same alphabet) and ``D_ia`` removes one unit from entry
``i`` of the x-vector and entry ``a`` of the y-vector.  ``q_n = 0`` for
``n < 0`` and ``q_0 = 1``.

Pairs ``(i, j)`` are processed in decreasing ``i``: once a pair with second
index ``j`` is processed, entry ``j`` can only decrease, so negative entries
may be discarded immediately.  D-factors only decrease entries and are applied
last.  Every surviving intermediate vector is nonnegative, hence every series
index is bounded by the vector sum and the expansion is finite.
"""

from __future__ import annotations

from functools import lru_cache

from chl.coeff import ONE, T, series_coefficients
from chl.partitions import Partition


@lru_cache(maxsize=None)
def r_series(order: int) -> tuple:
    """Coefficients of ``(1 - R)/(1 - tR)``."""
    return tuple(series_coefficients([ONE, -ONE], [ONE, -T], order))


@lru_cache(maxsize=None)
def d_series(order: int) -> tuple:
    """Coefficients of ``(1 - D)(1 - t²D)/(1 - tD)²``."""
    return tuple(series_coefficients([ONE, -(ONE + T * T), T * T], [ONE, -2 * T, T * T], order))


@lru_cache(maxsize=None)
def d_inverse_series(order: int) -> tuple:
    """Coefficients of ``(1 - tD)²/((1 - D)(1 - t²D))``."""
    return tuple(series_coefficients([ONE, -2 * T, T * T], [ONE, -(ONE + T * T), T * T], order))


def expand(xvec, yvec, x_pairs=None, y_pairs=None, d_pairs=None, d_coeffs=d_series) -> dict:
    """Apply the requested factors to ``q_xvec(x) q_yvec(y)``.

    ``x_pairs``/``y_pairs`` default to all ``i < j``; ``d_pairs`` to all
    ``(i, a)``.  A D-pair may carry its own series as ``(i, a, coeffs)``.
    Returns q-basis terms keyed by partition pairs.
    """
    lx, ly = len(xvec), len(yvec)
    if x_pairs is None:
        x_pairs = [(i, j) for i in range(lx) for j in range(i + 1, lx)]
    if y_pairs is None:
        y_pairs = [(i, j) for i in range(ly) for j in range(i + 1, ly)]
    if d_pairs is None:
        d_pairs = [(i, a) for i in range(lx) for a in range(ly)]
    bound = max(sum(xvec), sum(yvec), 0)
    rs = r_series(bound)

    states = {(tuple(xvec), tuple(yvec)): ONE}
    for side, pairs in ((0, sorted(x_pairs, key=lambda p: -p[0])), (1, sorted(y_pairs, key=lambda p: -p[0]))):
        for i, j in pairs:
            nxt: dict = {}
            for vecs, c in states.items():
                vec = vecs[side]
                for k in range(vec[j] + 1):
                    coef = rs[k]
                    if not coef:
                        continue
                    new = list(vec)
                    new[i] += k
                    new[j] -= k
                    key = (tuple(new), vecs[1]) if side == 0 else (vecs[0], tuple(new))
                    v = c * coef
                    nxt[key] = nxt[key] + v if key in nxt else v
            states = {k: v for k, v in nxt.items() if v}
    for pair in d_pairs:
        i, a = pair[0], pair[1]
        ds = pair[2](bound) if len(pair) > 2 else d_coeffs(bound)
        nxt = {}
        for (xv, yv), c in states.items():
            for k in range(min(xv[i], yv[a]) + 1):
                coef = ds[k]
                if not coef:
                    continue
                nx = list(xv)
                ny = list(yv)
                nx[i] -= k
                ny[a] -= k
                key = (tuple(nx), tuple(ny))
                v = c * coef
                nxt[key] = nxt[key] + v if key in nxt else v
        states = {k: v for k, v in nxt.items() if v}

    out: dict = {}
    for (xv, yv), c in states.items():
        if min(xv, default=0) < 0 or min(yv, default=0) < 0:
            continue
        key = (Partition.from_vector(xv), Partition.from_vector(yv))
        out[key] = out[key] + c if key in out else c
    return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=None)
def coupled_Q_terms(lam: Partition, mu: Partition) -> dict:
    """q-basis terms of ``Q_[λ,μ]`` from the raising-operator formula."""
    return expand(tuple(lam), tuple(mu))


def single_Q_terms(lam: Partition) -> dict:
    return coupled_Q_terms(Partition(lam), Partition())
