"""Single-alphabet Hall-Littlewood machinery."""

from __future__ import annotations

from functools import lru_cache

from chl.coeff import ONE, ZERO, RatCoeff, as_coeff
from chl.partitions import EMPTY, Partition, interlaces, is_horizontal_strip, psi_coefficient
from chl.raising import single_Q_terms
from chl.spectral import SpectralPoly
from chl.sym import (
    SymElem,
    add_into,
    differentiate,
    merge,
    p_scalar,
    partitions_of,
    qn_in_p,
)


def expand_qn(n: int) -> SymElem:
    """``q_n`` in the p-basis; zero for negative ``n``."""
    return SymElem._raw("p", {(rho, EMPTY): c for rho, c in qn_in_p(n).items()})


@lru_cache(maxsize=None)
def _hl_Q(lam: Partition) -> SymElem:
    return SymElem._raw("q", single_Q_terms(lam))


def hl_Q(lam) -> SymElem:
    """``Q_λ = ∏_{i<j} (1 - R_ij)/(1 - t R_ij) q_λ`` in the q-basis."""
    return _hl_Q(Partition(lam))


def hl_scalar(f: SymElem, g: SymElem) -> RatCoeff:
    """Bilinear form with ``<p_λ, p_μ> = δ z_λ ∏ (1 - t^{λ_i})^{-1}`` (both alphabets)."""
    a, b = f.to("p").terms, g.to("p").terms
    if len(b) < len(a):
        a, b = b, a
    out = ZERO
    for key, c in a.items():
        d = b.get(key)
        if d is not None:
            out = out + c * d * p_scalar(key[0]) * p_scalar(key[1])
    return out


@lru_cache(maxsize=None)
def _b_lambda(lam: Partition) -> RatCoeff:
    Q = hl_Q(lam)
    return hl_scalar(Q, Q)


def b_lambda(lam) -> RatCoeff:
    """``<Q_λ, Q_λ>``, computed from the pairing."""
    return _b_lambda(Partition(lam))


def hl_P(lam) -> SymElem:
    lam = Partition(lam)
    return hl_Q(lam) / b_lambda(lam)


def pieri_terms(n: int, lam) -> dict:
    """``q_n Q_λ = Σ ψ_{μ/λ}(t) Q_μ`` over horizontal n-strips ``μ/λ``."""
    lam = Partition(lam)
    if n < 0:
        return {}
    out = {}
    for mu in _strip_extensions(lam, n):
        out[mu] = psi_coefficient(mu, lam)
    return out


def pieri_multiply(n: int, lam) -> SymElem:
    return SymElem._raw("Q", {(mu, EMPTY): c for mu, c in pieri_terms(n, lam).items()})


@lru_cache(maxsize=None)
def _strip_extensions(lam: Partition, n: int) -> tuple:
    """All ``μ ⊇ λ`` with ``μ/λ`` a horizontal n-strip (μ ≻ λ, |μ| = |λ| + n)."""
    out = []
    bounds = [None] + list(lam)  # μ_1 unbounded, μ_{i+1} <= λ_i

    def rec(i, remaining, acc):
        if i == len(lam) + 1:
            if remaining == 0:
                out.append(Partition(acc))
            return
        low = lam[i] if i < len(lam) else 0
        high = low + remaining if bounds[i] is None else min(bounds[i], low + remaining)
        for v in range(low, high + 1):
            rec(i + 1, remaining - (v - low), acc + [v])

    rec(0, n, [])
    return tuple(sorted(out, key=lambda p: tuple(-x for x in p)))


def skew_P_single(lam, mu, z: str = "z") -> SpectralPoly:
    """``P_{λ/μ}(z; t) = ψ_{λ/μ}(t) z^{|λ|-|μ|}`` when λ ≻ μ, else 0."""
    lam, mu = Partition(lam), Partition(mu)
    if not interlaces(lam, mu):
        return SpectralPoly((z,))
    return SpectralPoly((z,), {(lam.size - mu.size,): psi_coefficient(lam, mu)})


def hl_P_evaluate(lam, values):
    """``P_λ(v_1, ..., v_N; t)`` via the single-variable branching rule.

    ``values`` may be RatCoeff or any commutative ring elements (for example
    SpectralPoly monomials ``u_i**2``).
    """
    lam = Partition(lam)
    values = list(values)
    if len(lam) > len(values):
        return ZERO
    if not lam:
        return ONE
    states = {EMPTY: None}  # None marks the multiplicative unit
    for i, x in enumerate(values):
        remaining = len(values) - i - 1
        nxt: dict = {}
        for mu, acc in states.items():
            for nu in _interlacing_between(mu, lam):
                if len(nu) > remaining + 1 + len(mu) or len(lam) - len(nu) > remaining:
                    continue
                d = nu.size - mu.size
                factor = psi_coefficient(nu, mu)
                term = factor if d == 0 else (x ** d) * factor
                if acc is not None:
                    term = acc * term
                nxt[nu] = term if nu not in nxt else nxt[nu] + term
        states = nxt
    res = states.get(lam)
    return ZERO if res is None else res


def _interlacing_between(mu: Partition, lam: Partition):
    """Partitions ν with ν ≻ μ and ν ⊆ λ."""
    out = []

    def rec(i, acc):
        if i == len(mu) + 1:
            out.append(Partition(acc))
            return
        low = mu[i] if i < len(mu) else 0
        high = lam[i] if i < len(lam) else 0
        if i > 0:
            high = min(high, mu[i - 1])
        for v in range(low, high + 1):
            rec(i + 1, acc + [v])

    rec(0, [])
    return out


def apply_q_mult(k: int, f: SymElem) -> SymElem:
    """Multiplication by ``q_k``; Q-basis input stays in the Q-basis (Pieri)."""
    if k < 0:
        return SymElem.zero(f.basis)
    if f.basis == "Q":
        out: dict = {}
        for (lam, mu), c in f.terms.items():
            for nu, psi in pieri_terms(k, lam).items():
                add_into(out, {(nu, mu): psi}, c)
        return SymElem._raw("Q", out)
    return f.to("p").product(expand_qn(k)).to(f.basis)


@lru_cache(maxsize=None)
def _perp_word(k: int):
    """``[z^k] exp(Σ z^m ∂/∂p_m) = Σ_{ρ ⊢ k} ∂_ρ / ∏ m_i(ρ)!``."""
    out = []
    for rho in partitions_of(k):
        denom = 1
        for m in rho.multiplicities().values():
            for j in range(2, m + 1):
                denom *= j
        out.append((tuple(sorted(rho.multiplicities().items())), RatCoeff(1) / denom))
    return out


def apply_derivative_exp(k: int, terms: dict, alphabet: str = "x", sign: int = 1) -> dict:
    """``[z^k] exp(sign Σ z^m ∂/∂p_m(alphabet))`` applied to p-basis terms."""
    out: dict = {}
    if k < 0:
        return out
    for word, c in _perp_word(k):
        cur = terms
        nparts = 0
        for n, j in word:
            cur = differentiate(cur, n, alphabet, j)
            nparts += j
            if not cur:
                break
        if cur:
            add_into(out, cur, c if sign > 0 or nparts % 2 == 0 else -c)
    return out


def apply_q_perp(k: int, f: SymElem) -> SymElem:
    """Adjoint of multiplication by ``q_k`` under :func:`hl_scalar`."""
    if k < 0:
        return SymElem.zero(f.basis)
    return SymElem._raw("p", apply_derivative_exp(k, f.to("p").terms)).to(f.basis)


def project_columns(f: SymElem, M: int) -> SymElem:
    """Keep only Q-basis terms whose diagrams have at most ``M`` columns."""
    g = f.to("Q")
    return SymElem._raw("Q", {k: c for k, c in g.terms.items() if not k[0] or k[0][0] <= M})


def apply_H(M: int, f: SymElem, z: str = "z", project: bool = False) -> SpectralPoly:
    """``H_M(z) f = Σ_{k=0}^M z^k q_k f``."""
    out = SpectralPoly((z,))
    for k in range(M + 1):
        g = apply_q_mult(k, f)
        if project:
            g = project_columns(g, M).to(f.basis)
        if g:
            out.terms[(k,)] = g
    return out


def apply_H_perp(M: int, f: SymElem, z: str = "z") -> SpectralPoly:
    """``H_M^⊥(z) f = Σ_{k=0}^M z^k q_k^⊥ f``."""
    out = SpectralPoly((z,))
    for k in range(M + 1):
        g = apply_q_perp(k, f)
        if g:
            out.terms[(k,)] = g
    return out


def single_basis(max_size: int) -> list[SymElem]:
    from chl.partitions import partitions_up_to

    return [SymElem._raw("Q", {(lam, EMPTY): ONE}) for lam in partitions_up_to(max_size)]


def Q_elem(lam, mu=()) -> SymElem:
    """The basis element ``Q_[λ,μ]`` tagged in the Q-basis."""
    return SymElem._raw("Q", {(Partition(lam), Partition(mu)): ONE})


def h_n_in_p(n: int) -> SymElem:
    """Complete homogeneous ``h_n = Σ_{ρ⊢n} p_ρ / z_ρ``."""
    from chl.partitions import z_lambda

    return SymElem._raw("p", {(rho, EMPTY): RatCoeff(1) / z_lambda(rho) for rho in partitions_of(n)})


__all__ = [
    "expand_qn", "hl_Q", "hl_P", "hl_scalar", "b_lambda", "pieri_multiply", "pieri_terms",
    "skew_P_single", "hl_P_evaluate", "apply_H", "apply_H_perp", "apply_q_mult", "apply_q_perp",
    "project_columns", "Q_elem", "h_n_in_p", "is_horizontal_strip", "merge", "as_coeff",
]
