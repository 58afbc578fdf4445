"""Coupled Hall-Littlewood functions and the vertex operators that generate them.

The substituted alphabet ``x - ∂̃_y`` acts on p-basis elements through the
commuting operators ``a_n = p_n(x) - n ∂/∂p_n(y)`` (and symmetrically for
``y - ∂̃_x``), which follows from ``x_n = p_n/n``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from chl.coeff import ONE, T, RatCoeff
from chl.hl import apply_derivative_exp, hl_Q, pieri_terms
from chl.partitions import EMPTY, Partition, interlaces, partitions_up_to, to_text
from chl.raising import coupled_Q_terms, d_inverse_series, expand
from chl.spectral import SpectralPoly
from chl.sym import CapExceeded, SymElem, add_into, default_cap, merge, qn_in_p, qneg_in_p

OTHER = {"x": "y", "y": "x"}
_IDX = {"x": 0, "y": 1}

# -- substituted-alphabet operators ------------------------------------------


def _weight(key) -> int:
    return key[0].size + key[1].size


def _check_cap(terms: dict, cap: int | None) -> None:
    if cap is None:
        return
    for key in terms:
        if key[0].size > cap or key[1].size > cap:
            raise CapExceeded(f"term p[{to_text(key[0])}|{to_text(key[1])}] exceeds degree cap {cap}")


@lru_cache(maxsize=None)
def _a_on_monomial(n: int, alphabet: str, key) -> dict:
    """``(p_n(alphabet) - n ∂/∂p_n(other)) p_key``."""
    i, j = _IDX[alphabet], _IDX[OTHER[alphabet]]
    mult = list(key)
    mult[i] = merge(key[i], Partition((n,)))
    out = {tuple(mult): ONE}
    m = key[j].count(n)
    if m:
        parts = list(key[j])
        parts.remove(n)
        rest = list(key)
        rest[j] = tuple.__new__(Partition, tuple(parts))
        out[tuple(rest)] = RatCoeff(-n * m)
    return out


@lru_cache(maxsize=None)
def _word_on_monomial(rho: Partition, alphabet: str, key) -> dict:
    if not rho:
        return {key: ONE}
    inner = _word_on_monomial(Partition(rho[1:]), alphabet, key)
    out: dict = {}
    for k2, c in inner.items():
        add_into(out, _a_on_monomial(rho[0], alphabet, k2), c)
    return out


def apply_substituted(poly: dict, terms: dict, alphabet: str = "x", cap: int | None = None) -> dict:
    """Apply ``F(alphabet - ∂̃_other)`` to p-basis ``terms``.

    ``poly`` maps partitions ρ to coefficients of ``p_ρ`` in a single-alphabet
    polynomial ``F``.
    """
    _check_cap(terms, cap)
    out: dict = {}
    for key, c in terms.items():
        for rho, f in poly.items():
            add_into(out, _word_on_monomial(rho, alphabet, key), c * f)
    _check_cap(out, cap)
    return out


def _single_p(elem: SymElem) -> dict:
    return {lam: c for (lam, _), c in elem.to("p").terms.items()}


@lru_cache(maxsize=None)
def _Q_in_p_single(lam: Partition) -> dict:
    return _single_p(hl_Q(lam))


class GradedOperator:
    """Truncated linear operator on p-basis elements with a degree cap."""

    def __init__(self, name: str, action, cap: int | None = None):
        self.name = name
        self._action = action
        self.cap = default_cap() if cap is None else cap

    def apply_terms(self, terms: dict) -> dict:
        _check_cap(terms, self.cap)
        out = self._action(terms)
        _check_cap(out, self.cap)
        return out

    def __call__(self, f: SymElem) -> SymElem:
        return SymElem._raw("p", self.apply_terms(f.to("p").terms)).to(f.basis)

    def __matmul__(self, other: "GradedOperator") -> "GradedOperator":
        return GradedOperator(f"{self.name}·{other.name}", lambda t: self._action(other._action(t)), min(self.cap, other.cap))

    def __repr__(self):
        return f"GradedOperator({self.name}, cap={self.cap})"


def q_sub(k: int, alphabet: str = "x", cap: int | None = None) -> GradedOperator:
    """``q_k(x - ∂̃_y)`` (alphabet ``"x"``) or ``q_k(y - ∂̃_x)``."""
    poly = qn_in_p(k)
    return GradedOperator(f"q{k}({alphabet}-d{OTHER[alphabet]})", lambda t: apply_substituted(poly, t, alphabet), cap)


def Q_sub(lam, alphabet: str = "x", cap: int | None = None) -> GradedOperator:
    poly = _Q_in_p_single(Partition(lam))
    return GradedOperator(f"Q{to_text(lam)}({alphabet}-d{OTHER[alphabet]})", lambda t: apply_substituted(poly, t, alphabet), cap)


# -- three constructions -------------------------------------------------------


def coupled_Q_raising(lam, mu=()) -> SymElem:
    """Raising/lowering-operator definition, q-basis."""
    return SymElem._raw("q", coupled_Q_terms(Partition(lam), Partition(mu)))


def coupled_Q_substituted(lam, mu=(), cap: int | None = None) -> SymElem:
    """``Q_λ(x - ∂̃_y) Q_μ(y - ∂̃_x) · 1`` in the p-basis."""
    one = {(EMPTY, EMPTY): ONE}
    cap = default_cap() if cap is None else cap
    inner = Q_sub(mu, "y", cap).apply_terms(one)
    return SymElem._raw("p", Q_sub(lam, "x", cap).apply_terms(inner))


def coupled_Q_vertex(lam, mu=(), cap: int | None = None) -> SymElem:
    """``X^+_{λ_1}···X^+_{λ_l} Y^+_{μ_1}···Y^+_{μ_l'} · 1`` by composing modes."""
    lam, mu = Partition(lam), Partition(mu)
    cap = default_cap() if cap is None else cap
    if lam.size > cap or mu.size > cap:
        raise CapExceeded(f"|λ|={lam.size}, |μ|={mu.size} exceed cap {cap}")
    terms = {(EMPTY, EMPTY): ONE}
    for n in reversed(mu):
        terms = mode_terms("Y+", n, terms, cap)
    for n in reversed(lam):
        terms = mode_terms("X+", n, terms, cap)
    return SymElem._raw("p", terms)


class MethodDisagreement(AssertionError):
    pass


def coupled_Q(lam, mu=(), verify: bool = False) -> SymElem:
    """``Q_[λ,μ]`` (q-basis); with ``verify`` all three constructions must agree."""
    q = coupled_Q_raising(lam, mu)
    if verify:
        p = q.to("p")
        for name, other in (("vertex", coupled_Q_vertex(lam, mu)), ("substituted", coupled_Q_substituted(lam, mu))):
            if other.terms != p.terms:
                raise MethodDisagreement(f"raising and {name} constructions differ for [{to_text(lam)}|{to_text(mu)}]")
    return q


def Q_basis(lam, mu=()) -> SymElem:
    return SymElem._raw("Q", {(Partition(lam), Partition(mu)): ONE})


def pairs_up_to(total: int):
    """All ``(λ, μ)`` with ``|λ| + |μ| <= total``."""
    parts = partitions_up_to(total)
    return [(l, m) for l in parts for m in parts if l.size + m.size <= total]


# -- triangularity and structure constants --------------------------------------


@dataclass
class TriangularityReport:
    lam: Partition
    mu: Partition
    leading_one: bool
    support_ok: bool
    integral: bool
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.leading_one and self.support_ok and self.integral


def triangularity_report(lam, mu=()) -> TriangularityReport:
    lam, mu = Partition(lam), Partition(mu)
    terms = coupled_Q_terms(lam, mu)
    leading = terms.get((lam, mu)) == ONE
    bad = []
    integral = True
    for (nu, eta), c in terms.items():
        if not c.is_integral_polynomial_in_t():
            integral = False
            bad.append(("non-integral", to_text(nu), to_text(eta), str(c)))
        dominating = nu.dominates(lam) and eta.dominates(mu)
        smaller = nu.size < lam.size and eta.size < mu.size
        if not (dominating or smaller):
            bad.append(("support", to_text(nu), to_text(eta), str(c)))
    support_ok = not any(b[0] == "support" for b in bad)
    return TriangularityReport(lam, mu, leading, support_ok, integral, bad)


def structure_constants(kappa, theta, nu, eta) -> dict:
    """``Q_[κ,θ] Q_[ν,η] = Σ M^{[λ,μ]} Q_[λ,μ]``; returns ``{(λ, μ): M}``."""
    prod = coupled_Q_raising(kappa, theta).product(coupled_Q_raising(nu, eta))
    return dict(prod.to("Q").terms)


def product_algebraic_form(kappa, theta, nu, eta) -> SymElem:
    """Algebraic form of ``Q_[κ,θ] Q_[ν,η]`` (q-basis).

    Raising factors act within each of the four blocks of the concatenated
    index vectors ``κν`` and ``θη``, D-factors act on every x/y pair, and the
    prefactor ``(1 - tD)²/((1 - D)(1 - t²D))`` acts on the pairs that mix
    ``κ`` with ``η`` or ``ν`` with ``θ``.
    """
    kappa, theta, nu, eta = map(Partition, (kappa, theta, nu, eta))
    xv = tuple(kappa) + tuple(nu)
    yv = tuple(theta) + tuple(eta)
    lk, lt = len(kappa), len(theta)
    xr = [(i, j) for i in range(len(xv)) for j in range(i + 1, len(xv)) if (i < lk) == (j < lk)]
    yr = [(i, j) for i in range(len(yv)) for j in range(i + 1, len(yv)) if (i < lt) == (j < lt)]
    d_all = [(i, a) for i in range(len(xv)) for a in range(len(yv))]
    cross = [(i, a, d_inverse_series) for i, a in d_all if (i < lk) != (a < lt)]
    return SymElem._raw("q", expand(xv, yv, xr, yr, d_all + cross))


def single_structure_constants(kappa, nu) -> dict:
    """``f^λ_{κν}``: coefficients of ``Q_κ Q_ν`` in the single-alphabet Q-basis."""
    prod = hl_Q(kappa).product(hl_Q(nu)).to("Q")
    return {lam: c for (lam, _), c in prod.terms.items()}


def iterated_pieri(kappa, nu) -> dict:
    """``f^λ_{κν}`` computed independently: expand ``Q_κ`` in q-monomials and
    multiply ``Q_ν`` by each ``q_k`` through the Pieri rule."""
    out: dict = {}
    for (rho, _), c in hl_Q(kappa).terms.items():
        cur = {Partition(nu): ONE}
        for k in rho:
            nxt: dict = {}
            for lam, d in cur.items():
                add_into(nxt, pieri_terms(k, lam), d)
            cur = nxt
        add_into(out, cur, c)
    return out


# -- vertex operators ------------------------------------------------------------


def gamma_minus_action(which: int, f: SymElem, order: int, z: str = "z", cap: int | None = None) -> SpectralPoly:
    """``Γ_1^-(z) = exp ξ_t(x - ∂̃_y, z)`` (``which=1``) or ``Γ_2^-`` truncated at ``z^order``."""
    alph = "x" if which == 1 else "y"
    cap = default_cap() if cap is None else cap
    terms = f.to("p").terms
    out = SpectralPoly((z,))
    for k in range(order + 1):
        g = apply_substituted(qn_in_p(k), terms, alph, cap)
        if g:
            out.terms[(k,)] = SymElem._raw("p", g).to(f.basis)
    return out


def gamma_plus_action(which: int, f: SymElem, z: str = "z", cap: int | None = None) -> SpectralPoly:
    """``Γ_1^+(z) = exp ξ(∂̃_x, 1/z)`` (or ``Γ_2^+``); exact since it only differentiates."""
    alph = "x" if which == 1 else "y"
    terms = f.to("p").terms
    _check_cap(terms, default_cap() if cap is None else cap)
    top = max((k[_IDX[alph]].size for k in terms), default=0)
    out = SpectralPoly((z,))
    for k in range(top + 1):
        g = apply_derivative_exp(k, terms, alph, +1)
        if g:
            out.terms[(-k,)] = SymElem._raw("p", g).to(f.basis)
    return out


_KIND = {"X+": ("x", +1), "X-": ("x", -1), "Y+": ("y", +1), "Y-": ("y", -1)}


@lru_cache(maxsize=None)
def _mode_on_monomial(kind: str, n: int, key) -> dict:
    alph, sign = _KIND[kind]
    top = key[_IDX[alph]].size
    mult = qn_in_p if sign > 0 else qneg_in_p
    out: dict = {}
    for k in range(max(0, -n), top + 1):
        g = apply_derivative_exp(k, {key: ONE}, alph, -sign)
        if g:
            add_into(out, apply_substituted(mult(n + k), g, alph))
    return out


def mode_terms(kind: str, n: int, terms: dict, cap: int | None = None) -> dict:
    """Mode ``X^±_n`` / ``Y^±_n`` applied to p-basis terms."""
    if kind not in _KIND:
        raise ValueError(f"unknown mode kind {kind!r}")
    _check_cap(terms, cap)
    out: dict = {}
    for key, c in terms.items():
        add_into(out, _mode_on_monomial(kind, n, key), c)
    _check_cap(out, cap)
    return out


def fermion_mode(kind: str, n: int, f: SymElem, cap: int | None = None) -> SymElem:
    """The ``z^n`` mode of ``X^±(z)`` or ``Y^±(z)`` acting on ``f``."""
    return SymElem._raw("p", mode_terms(kind, n, f.to("p").terms, cap))


def _compose(kinds_and_indices, terms):
    for kind, n in reversed(kinds_and_indices):
        terms = mode_terms(kind, n, terms)
    return terms


def _combine(parts) -> dict:
    out: dict = {}
    for coeff, terms in parts:
        add_into(out, terms, coeff)
    return out


def relation_same(kind: str, n: int, m: int, terms: dict) -> dict:
    """``X_{n-1}X_m - tX_nX_{m-1} + X_{m-1}X_n - tX_mX_{n-1}`` applied to ``terms``."""
    k = kind
    return _combine([
        (ONE, _compose([(k, n - 1), (k, m)], terms)),
        (-T, _compose([(k, n), (k, m - 1)], terms)),
        (ONE, _compose([(k, m - 1), (k, n)], terms)),
        (-T, _compose([(k, m), (k, n - 1)], terms)),
    ])


def relation_mixed_as_printed(letter: str, n: int, m: int, terms: dict) -> dict:
    """``X⁺_nX⁻_{m-1} - tX⁺_{n-1}X⁻_m + X⁺_mX⁻_{n-1} - tX⁺_{m-1}X⁻_n - (1-t)²δ_{m+n,1}``."""
    p, q = letter + "+", letter + "-"
    parts = [
        (ONE, _compose([(p, n), (q, m - 1)], terms)),
        (-T, _compose([(p, n - 1), (q, m)], terms)),
        (ONE, _compose([(p, m), (q, n - 1)], terms)),
        (-T, _compose([(p, m - 1), (q, n)], terms)),
    ]
    if m + n == 1:
        parts.append((-(ONE - T) ** 2, terms))
    return _combine(parts)


def relation_mixed_normal(letter: str, n: int, m: int, terms: dict) -> dict:
    """``X⁺_nX⁻_{m-1} - tX⁺_{n-1}X⁻_m + X⁻_mX⁺_{n-1} - tX⁻_{m-1}X⁺_n - (1-t)²δ_{m+n,1}``.

    This is the ``z^n w^m`` coefficient of
    ``(w - tz)X⁺(z)X⁻(w) + (z - tw)X⁻(w)X⁺(z) = (1-t)² z δ(w/z)``, which follows
    from the contractions ``(z - tw)/(z - w)`` and ``(w - tz)/(w - z)``.
    """
    p, q = letter + "+", letter + "-"
    parts = [
        (ONE, _compose([(p, n), (q, m - 1)], terms)),
        (-T, _compose([(p, n - 1), (q, m)], terms)),
        (ONE, _compose([(q, m), (p, n - 1)], terms)),
        (-T, _compose([(q, m - 1), (p, n)], terms)),
    ]
    if m + n == 1:
        parts.append((-(ONE - T) ** 2, terms))
    return _combine(parts)


def commutator(kind_a: str, n: int, kind_b: str, m: int, terms: dict) -> dict:
    return _combine([(ONE, _compose([(kind_a, n), (kind_b, m)], terms)), (-ONE, _compose([(kind_b, m), (kind_a, n)], terms))])


@dataclass
class CheckReport:
    check: str
    params: dict
    cases: list = field(default_factory=list)  # (key, passed, witness)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.cases)

    @property
    def failures(self) -> list:
        return [(k, w) for k, ok, w in self.cases if not ok]

    def add(self, key, ok: bool, witness=None):
        self.cases.append((key, bool(ok), witness))


def q_monomials(max_degree: int):
    """q-basis monomials ``q_[ν,η]`` with ``|ν| + |η| <= max_degree`` as p-basis terms."""
    for nu, eta in pairs_up_to(max_degree):
        yield (nu, eta), SymElem._raw("q", {(nu, eta): ONE}).to("p").terms


def fermion_relations_check(index_range: int = 3, degree_cap: int = 4, include_printed: bool = True) -> CheckReport:
    """Deformed fermion relations, X/Y commutativity, on q-monomials of bounded degree."""
    report = CheckReport("fermion", {"index_range": index_range, "degree_cap": degree_cap})
    idx = range(-index_range, index_range + 1)
    for (nu, eta), terms in q_monomials(degree_cap):
        label = f"{to_text(nu)}|{to_text(eta)}"
        for n in idx:
            for m in idx:
                for kind in ("X+", "X-", "Y+", "Y-"):
                    r = relation_same(kind, n, m, terms)
                    report.add(("same", kind, n, m, label), not r, _witness(r))
                for letter in ("X", "Y"):
                    r = relation_mixed_normal(letter, n, m, terms)
                    report.add(("mixed", letter, n, m, label), not r, _witness(r))
                    if include_printed:
                        r = relation_mixed_as_printed(letter, n, m, terms)
                        report.add(("mixed-printed", letter, n, m, label), not r, _witness(r))
                for a in ("X+", "X-"):
                    for b in ("Y+", "Y-"):
                        r = commutator(a, n, b, m, terms)
                        report.add(("commute", a, b, n, m, label), not r, _witness(r))
    return report


def _witness(terms: dict):
    if not terms:
        return None
    key = min(terms, key=lambda k: (_weight(k), k))
    return f"{terms[key]} * p[{to_text(key[0])}|{to_text(key[1])}]"


def gamma_action_check(max_lambda: int = 4, max_mu: int = 4, order: int = 4) -> CheckReport:
    """``Γ^-`` acting on ``Q_[λ,μ]`` equals ``Σ_{ν≻λ} P_{ν/λ}(z) Q_[ν,μ]`` (and the y-side)."""
    report = CheckReport("gamma-action", {"max_lambda": max_lambda, "max_mu": max_mu, "order": order})
    cap = max_lambda + max_mu + order
    for lam in partitions_up_to(max_lambda):
        for mu in partitions_up_to(max_mu):
            f = coupled_Q_raising(lam, mu)
            for which in (1, 2):
                got = gamma_minus_action(which, f, order, cap=cap)
                base = lam if which == 1 else mu
                for k in range(order + 1):
                    coeff = got.terms.get((k,))
                    actual = coeff.to("Q").terms if coeff is not None else {}
                    expected = {}
                    for nu, psi in pieri_terms(k, base).items():
                        if not interlaces(nu, base):
                            continue
                        key = (nu, mu) if which == 1 else (lam, nu)
                        expected[key] = psi
                    ok = actual == expected
                    report.add((which, to_text(lam), to_text(mu), k), ok, None if ok else {"got": _fmt(actual), "expected": _fmt(expected)})
    return report


def _fmt(terms: dict) -> dict:
    return {f"{to_text(k[0])}|{to_text(k[1])}": str(c) for k, c in sorted(terms.items())}


def cross_commutation_check(k_max: int = 3, max_lambda: int = 4, degree_cap: int = 4) -> CheckReport:
    """``q_k(y - ∂̃_x) Q_λ(x - ∂̃_y) = Q_λ(x - ∂̃_y) q_k(y - ∂̃_x)`` on q-monomials."""
    report = CheckReport("cross-commutation", {"k_max": k_max, "max_lambda": max_lambda, "degree_cap": degree_cap})
    cap = degree_cap + k_max + max_lambda
    for k in range(k_max + 1):
        qk = q_sub(k, "y", cap)
        for lam in partitions_up_to(max_lambda):
            Ql = Q_sub(lam, "x", cap)
            for (nu, eta), terms in q_monomials(degree_cap):
                a = qk.apply_terms(Ql.apply_terms(terms))
                b = Ql.apply_terms(qk.apply_terms(terms))
                diff = add_into(dict(a), b, -ONE)
                report.add((k, to_text(lam), f"{to_text(nu)}|{to_text(eta)}"), not diff, _witness(diff))
    return report


def methods_agree_check(max_size: int = 6) -> CheckReport:
    report = CheckReport("methods-agree", {"max_size": max_size})
    cap = max(default_cap(), max_size)
    for lam, mu in pairs_up_to(max_size):
        p = coupled_Q_raising(lam, mu).to("p")
        v = coupled_Q_vertex(lam, mu, cap)
        s = coupled_Q_substituted(lam, mu, cap)
        ok = p.terms == v.terms == s.terms
        report.add(f"{to_text(lam)}|{to_text(mu)}", ok, None if ok else "constructions differ")
    return report


def universal_character_det(lam, mu) -> SymElem:
    """``S_[λ,μ]`` from the Jacobi-Trudi-type determinant of complete functions (p-basis)."""
    from itertools import permutations

    from chl.hl import h_n_in_p

    lam, mu = Partition(lam), Partition(mu)
    l, lp = len(lam), len(mu)
    size = l + lp

    def h(n, alph):
        if n < 0:
            return SymElem.zero("p")
        e = h_n_in_p(n)
        if alph == "y":
            e = SymElem._raw("p", {(EMPTY, k[0]): c for k, c in e.terms.items()})
        return e

    def entry(i, j):  # 1-based
        if i <= lp:
            return h(mu[lp - i] + i - j, "y")
        return h(lam[i - lp - 1] - i + j, "x")

    out = SymElem.zero("p")
    for perm in permutations(range(size)):
        sign = 1
        for a in range(size):
            for b in range(a + 1, size):
                if perm[a] > perm[b]:
                    sign = -sign
        term = SymElem.one("p")
        for i in range(size):
            term = term.product(entry(i + 1, perm[i] + 1))
            if not term:
                break
        if term:
            out = out + term.scale(sign)
    return out

