"""q-boson lattice: Fock spaces, L/R/monodromy matrices and their identities.

Operators are exact finite sums of per-site words acting on the infinite Fock
space, so no occupancy cutoff is ever hit; ``n_max`` only bounds the set of
basis states on which identities are tested.  Site words use the letters
``c`` (B†), ``a`` (B), ``n`` (N) and ``k`` (q^N), applied right to left.

q and t are the same parameter, ``q^{1/2} = s``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from chl.coeff import ONE, S, T, ZERO, RatCoeff
from chl.coupled import apply_substituted
from chl.hl import apply_derivative_exp, apply_H, apply_H_perp, hl_P_evaluate
from chl.partitions import EMPTY, enumerate_in_box, occupancy_to_partition, partition_to_occupancy, to_text
from chl.spectral import SpectralPoly
from chl.sym import SymElem, qn_in_p

Q = T
Q_HALF = S
Q_MHALF = S.inverse()


@lru_cache(maxsize=None)
def qint(n: int) -> RatCoeff:
    """``[n] = (1 - q^n)/(1 - q)``."""
    out = ZERO
    for j in range(n):
        out = out + Q ** j
    return out


@lru_cache(maxsize=None)
def qfactorial(n: int) -> RatCoeff:
    out = ONE
    for j in range(1, n + 1):
        out = out * qint(j)
    return out


def _poly(c) -> SpectralPoly:
    if isinstance(c, SpectralPoly):
        return c
    return SpectralPoly.constant(c if isinstance(c, RatCoeff) else RatCoeff(c))


# -- truncated single-site matrices --------------------------------------------


@dataclass
class SiteOps:
    """Matrices of B, B†, N on ``|0>, ..., |n_max>`` (B†|n_max> = 0)."""

    n_max: int
    B: list
    Bdag: list
    N: list

    def norm(self, n: int) -> RatCoeff:
        """``<n|n> = [n]!``."""
        return qfactorial(n)


def build_site_ops(n_max: int) -> SiteOps:
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    dim = n_max + 1
    B = [[ZERO] * dim for _ in range(dim)]
    Bd = [[ZERO] * dim for _ in range(dim)]
    N = [[ZERO] * dim for _ in range(dim)]
    for n in range(dim):
        N[n][n] = RatCoeff(n)
        if n >= 1:
            B[n - 1][n] = qint(n)
        if n + 1 <= n_max:
            Bd[n + 1][n] = ONE
    return SiteOps(n_max, B, Bd, N)


# -- exact Fock operators ------------------------------------------------------


def _apply_letters(letters: str, n: int):
    """Apply a single-site word to ``|n>``; returns (coefficient, n') or None."""
    coeff = ONE
    for ch in reversed(letters):
        if ch == "c":
            n += 1
        elif ch == "a":
            if n == 0:
                return None
            coeff = coeff * qint(n)
            n -= 1
        elif ch == "n":
            if n == 0:
                return None
            coeff = coeff * RatCoeff(n)
        elif ch == "k":
            coeff = coeff * Q ** n
        else:
            raise ValueError(f"unknown site letter {ch!r}")
    return coeff, n


@lru_cache(maxsize=None)
def _apply_word(word: tuple, occ: tuple):
    coeff = ONE
    out = list(occ)
    for i, letters in enumerate(word):
        if not letters:
            continue
        r = _apply_letters(letters, occ[i])
        if r is None:
            return None
        c, out[i] = r
        coeff = coeff * c
    return coeff, tuple(out)


_DAGGER = {"c": ("a", ONE - Q), "a": ("c", (ONE - Q).inverse()), "n": ("n", ONE), "k": ("k", ONE)}
_ADJOINT = {"c": ("a", ONE), "a": ("c", ONE), "n": ("n", ONE), "k": ("k", ONE)}


class FockOperator:
    """``Σ coeff · word`` on a fixed number of sites; coefficients are SpectralPoly."""

    __slots__ = ("sites", "terms")

    def __init__(self, sites: int, terms=None):
        self.sites = sites
        self.terms = {}
        for w, c in (terms or {}).items():
            c = _poly(c)
            if c:
                self.terms[w] = c

    @classmethod
    def scalar(cls, sites: int, c=ONE) -> "FockOperator":
        return cls(sites, {("",) * sites: _poly(c)})

    @classmethod
    def zero(cls, sites: int) -> "FockOperator":
        return cls(sites)

    @classmethod
    def site(cls, sites: int, i: int, letters: str, c=ONE) -> "FockOperator":
        word = [""] * sites
        word[i] = letters
        return cls(sites, {tuple(word): _poly(c)})

    def __add__(self, other):
        if not isinstance(other, FockOperator):
            other = FockOperator.scalar(self.sites, other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            v = terms[w] + c if w in terms else c
            if v:
                terms[w] = v
            else:
                terms.pop(w, None)
        out = FockOperator(self.sites)
        out.terms = terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = FockOperator(self.sites)
        out.terms = {w: -c for w, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if not isinstance(other, FockOperator):
            other = FockOperator.scalar(self.sites, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, FockOperator):
            c = _poly(other)
            out = FockOperator(self.sites)
            out.terms = {w: v * c for w, v in self.terms.items() if v * c}
            return out
        terms: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = tuple(a + b for a, b in zip(w1, w2))
                v = c1 * c2
                terms[w] = terms[w] + v if w in terms else v
        out = FockOperator(self.sites)
        out.terms = {w: c for w, c in terms.items() if c}
        return out

    def __rmul__(self, other):
        return self * other

    def __bool__(self):
        return bool(self.terms)

    def map_spectral(self, fn) -> "FockOperator":
        out = FockOperator(self.sites)
        for w, c in self.terms.items():
            v = fn(c)
            if v:
                out.terms[w] = v
        return out

    def invert_variable(self, name: str) -> "FockOperator":
        return self.map_spectral(lambda c: c.invert_variable(name))

    def rename(self, mapping: dict) -> "FockOperator":
        return self.map_spectral(lambda c: c.rename(mapping))

    def dagger(self, convention: str = "qboson") -> "FockOperator":
        """Reverse every word and map its letters.

        ``"qboson"``: B† -> (1-q)B, B -> B†/(1-q), the adjoint for the norm
        ``<n|n> = (q;q)_n``.  ``"factorial"``: B† <-> B, the adjoint for
        ``<n|n> = [n]!``.
        """
        table = _DAGGER if convention == "qboson" else _ADJOINT
        out: dict = {}
        for w, c in self.terms.items():
            factor = ONE
            new = []
            for letters in w:
                mapped = []
                for ch in reversed(letters):
                    m, f = table[ch]
                    mapped.append(m)
                    factor = factor * f
                new.append("".join(mapped))
            key = tuple(new)
            v = c * factor
            out[key] = out[key] + v if key in out else v
        return FockOperator(self.sites, out)

    def apply_basis(self, occ: tuple) -> dict:
        out: dict = {}
        for w, c in self.terms.items():
            r = _apply_word(w, occ)
            if r is None:
                continue
            f, new = r
            v = c * f
            out[new] = out[new] + v if new in out else v
        return {k: v for k, v in out.items() if v}

    def apply(self, vec: dict) -> dict:
        out: dict = {}
        for occ, c in vec.items():
            for new, v in self.apply_basis(occ).items():
                v = c * v
                out[new] = out[new] + v if new in out else v
        return {k: v for k, v in out.items() if v}

    def matrix(self, states) -> dict:
        """Sparse matrix ``{(row_state, col_state): coeff}`` on ``states``."""
        out = {}
        for col in states:
            for row, c in self.apply_basis(col).items():
                out[(row, col)] = c
        return out

    def first_difference(self, other: "FockOperator", n_max: int):
        """First basis state (occupancies <= n_max) where the two operators differ."""
        diff = self - other
        for occ in itertools.product(range(n_max + 1), repeat=self.sites):
            r = diff.apply_basis(occ)
            if r:
                row = min(r)
                return {"state": list(occ), "row": list(row), "difference": str(r[row])}
        return None

    def __repr__(self):
        return f"FockOperator(sites={self.sites}, words={len(self.terms)})"


def vacuum(sites: int) -> dict:
    return {(0,) * sites: _poly(ONE)}


def fock_states(sites: int, n_max: int):
    return list(itertools.product(range(n_max + 1), repeat=sites))


# -- L, R, monodromy -----------------------------------------------------------


def _u(name: str = "u", power: int = 1) -> SpectralPoly:
    return SpectralPoly.var(name, power)


def build_L(sites: int, i: int, u: str = "u", mutate: str | None = None) -> list:
    """``L_i(u) = [[u^{-1}, B†_i], [(1-q)B_i, u]]`` on ``sites`` sites.

    ``mutate="sign"`` flips the sign of the lower-left entry (a test mutant).
    """
    lower = ONE - Q if mutate != "sign" else Q - ONE
    return [
        [FockOperator.scalar(sites, _u(u, -1)), FockOperator.site(sites, i, "c")],
        [FockOperator.site(sites, i, "a", lower), FockOperator.scalar(sites, _u(u, 1))],
    ]


def build_L_forgotten(sites: int, u: str = "u") -> list:
    """Site-0 L-matrix after forgetting ``B_0^†`` and ``(1-q)B_0``: ``[[u^{-1}, 1], [1, u]]``."""
    return [
        [FockOperator.scalar(sites, _u(u, -1)), FockOperator.scalar(sites, ONE)],
        [FockOperator.scalar(sites, ONE), FockOperator.scalar(sites, _u(u, 1))],
    ]


def f_cleared(a: str, b: str) -> SpectralPoly:
    """``(b² - a²)·f(a, b)`` where ``f(a, b) = (q^{-1/2} b² - q^{1/2} a²)/(b² - a²)``."""
    return _u(b, 2) * Q_MHALF - _u(a, 2) * Q_HALF


def g_cleared(a: str, b: str) -> SpectralPoly:
    """``(b² - a²)·g(a, b)`` where ``g(a, b) = ab(q^{-1/2} - q^{1/2})/(b² - a²)``."""
    return _u(a) * _u(b) * (Q_MHALF - Q_HALF)


def clearing_factor(u: str = "u", v: str = "v") -> SpectralPoly:
    return _u(u, 2) - _u(v, 2)


@dataclass
class RMatrix:
    """``R(u, v)`` stored as ``(u² - v²)·R`` with the clearing factor recorded."""

    entries: list
    clearing: SpectralPoly

    def entry(self, i: int, j: int) -> SpectralPoly:
        return self.entries[i][j]


def build_R(u: str = "u", v: str = "v", mutate: str | None = None) -> RMatrix:
    zero = SpectralPoly()
    f = f_cleared(v, u)
    g = g_cleared(v, u)
    clear = clearing_factor(u, v)
    a, b = clear * Q_MHALF, clear * Q_HALF
    if mutate == "entry":
        a = clear * Q_HALF
    ent = [
        [f, zero, zero, zero],
        [zero, g, a, zero],
        [zero, b, g, zero],
        [zero, zero, zero, f],
    ]
    return RMatrix(ent, clear)


def _mat_mul(X: list, Y: list, sites: int) -> list:
    n = len(X)
    out = []
    for i in range(n):
        row = []
        for j in range(len(Y[0])):
            acc = FockOperator.zero(sites)
            for k in range(len(Y)):
                if X[i][k] and Y[k][j]:
                    acc = acc + X[i][k] * Y[k][j]
            row.append(acc)
        out.append(row)
    return out


def _tensor(X: list, Y: list, sites: int) -> list:
    """Auxiliary-space tensor product with entries ``X_ij Y_kl`` at ``(2i+k, 2j+l)``."""
    out = [[FockOperator.zero(sites) for _ in range(4)] for _ in range(4)]
    for i, j, k, l in itertools.product(range(2), repeat=4):
        out[2 * i + k][2 * j + l] = X[i][j] * Y[k][l]
    return out


def _scalar_matrix(R: RMatrix, sites: int) -> list:
    return [[FockOperator.scalar(sites, c) if c else FockOperator.zero(sites) for c in row] for row in R.entries]


def _rename_matrix(X: list, mapping: dict) -> list:
    return [[e.rename(mapping) for e in row] for row in X]


def intertwining_check(L_u: list, L_v: list, sites: int, n_max: int, R: RMatrix | None = None):
    """Compare ``R(L(u)⊗L(v))`` with ``(L(v)⊗L(u))R`` entrywise; returns the first witness."""
    R = build_R() if R is None else R
    Rm = _scalar_matrix(R, sites)
    lhs = _mat_mul(Rm, _tensor(L_u, L_v, sites), sites)
    rhs = _mat_mul(_tensor(L_v, L_u, sites), Rm, sites)
    for i in range(4):
        for j in range(4):
            w = lhs[i][j].first_difference(rhs[i][j], n_max)
            if w is not None:
                w["entry"] = [i + 1, j + 1]
                return w
    return None


# -- reports -------------------------------------------------------------------


@dataclass
class Report:
    check: str
    parameters: dict
    cases: list = field(default_factory=list)

    def add(self, key: str, ok: bool, witness=None):
        self.cases.append({"key": key, "status": "pass" if ok else "fail", **({"witness": witness} if witness is not None else {})})

    @property
    def passed(self) -> bool:
        return all(c["status"] == "pass" for c in self.cases)

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    @property
    def witness(self):
        for c in self.cases:
            if c["status"] == "fail":
                return {"case": c["key"], **({"detail": c["witness"]} if "witness" in c else {})}
        return None

    def to_dict(self) -> dict:
        out = {"check": self.check, "parameters": self.parameters, "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def verify_RLL(n_max: int = 3, mutate: str | None = None) -> Report:
    rep = Report("rll", {"n_max": n_max, **({"mutate": mutate} if mutate else {})})
    L_u = build_L(1, 0, "u", mutate)
    L_v = build_L(1, 0, "v", mutate)
    w = intertwining_check(L_u, L_v, 1, n_max)
    rep.add("L(u) single site", w is None, w)
    return rep


# -- monodromy -----------------------------------------------------------------


@dataclass(frozen=True)
class Layout:
    """Site layout: group 1 has sites ``0..M1``, group 2 sites ``0..M2``.

    With ``forgotten`` the two site-0 spaces are dropped and their L-matrices
    become scalar.  ``M2 = None`` means a single group.
    """

    M1: int
    M2: int | None = None
    forgotten: bool = False

    def groups(self):
        return (1,) if self.M2 is None else (1, 2)

    def size(self, group: int) -> int:
        return self.M1 if group == 1 else self.M2

    def index(self, group: int, i: int):
        first = 1 if self.forgotten else 0
        if i < first:
            return None
        offset = 0 if group == 1 else (self.M1 + 1 - first)
        return offset + i - first

    @property
    def sites(self) -> int:
        first = 1 if self.forgotten else 0
        total = self.M1 + 1 - first
        if self.M2 is not None:
            total += self.M2 + 1 - first
        return total


def group_monodromy(layout: Layout, group: int, u: str = "u") -> list:
    """``T_i(u) = L_{M_i}(u) ··· L_0(u)`` for one group."""
    sites = layout.sites
    M = layout.size(group)
    mat = None
    for i in range(M, -1, -1):
        idx = layout.index(group, i)
        L = build_L_forgotten(sites, u) if idx is None else build_L(sites, idx, u)
        mat = L if mat is None else _mat_mul(mat, L, sites)
    return mat


def build_monodromy(M1: int, M2: int | None = None, u: str = "u", forgotten: bool = False) -> dict:
    """Full monodromy ``T = T_2 T_1`` and the group factors with their entries."""
    layout = Layout(M1, M2, forgotten)
    out = {"layout": layout}
    T1 = group_monodromy(layout, 1, u)
    out["T1"] = T1
    if M2 is None:
        out["T"] = T1
    else:
        T2 = group_monodromy(layout, 2, u)
        out["T2"] = T2
        out["T"] = _mat_mul(T2, T1, layout.sites)
    for key in ("T", "T1", "T2"):
        if key in out:
            m = out[key]
            suffix = key[1:]
            for name, (i, j) in zip("ABCD", ((0, 0), (0, 1), (1, 0), (1, 1))):
                out[name + suffix] = m[i][j]
    return out


def number_operator(layout: Layout, group: int | None = None) -> FockOperator:
    sites = layout.sites
    out = FockOperator.zero(sites)
    for g in layout.groups():
        if group is not None and g != group:
            continue
        for i in range(layout.size(g) + 1):
            idx = layout.index(g, i)
            if idx is not None:
                out = out + FockOperator.site(sites, idx, "n")
    return out


def verify_RTT_and_ABCD(M1: int, M2: int | None, n_max: int = 2, mutate: str | None = None) -> Report:
    rep = Report("rtt-abcd", {"M1": M1, "M2": M2, "n_max": n_max, **({"mutate": mutate} if mutate else {})})
    mu = build_monodromy(M1, M2, "u")
    mv = build_monodromy(M1, M2, "v")
    layout = mu["layout"]
    sites = layout.sites
    w = intertwining_check(mu["T"], mv["T"], sites, n_max, build_R(mutate=mutate))
    rep.add("RTT", w is None, w)
    A_u, B_u, C_u, D_u = (mu[k] for k in "ABCD")
    A_v, B_v, D_v = mv["A"], mv["B"], mv["D"]
    clear = clearing_factor()
    # q^{-1/2} A(u)B(v) = f(u,v) B(v)A(u) + g(v,u) B(u)A(v)
    lhs = A_u * B_v * (clear * Q_MHALF)
    rhs = B_v * A_u * (-f_cleared("u", "v")) + B_u * A_v * g_cleared("v", "u")
    w = lhs.first_difference(rhs, n_max)
    rep.add("AB", w is None, w)
    # q^{-1/2} D(u)B(v) = f(v,u) B(v)D(u) + g(u,v) B(u)D(v)
    lhs = D_u * B_v * (clear * Q_MHALF)
    rhs = B_v * D_u * f_cleared("v", "u") + B_u * D_v * (-g_cleared("u", "v"))
    w = lhs.first_difference(rhs, n_max)
    rep.add("DB", w is None, w)
    # C(u)B(v) - q B(v)C(u) = q^{1/2} g(u,v) (A(u)D(v) - A(v)D(u))
    lhs = (C_u * B_v - B_v * C_u * Q) * clear
    rhs = (A_u * D_v - A_v * D_u) * (-g_cleared("u", "v") * Q_HALF)
    w = lhs.first_difference(rhs, n_max)
    rep.add("CB", w is None, w)
    N = number_operator(layout)
    w = (N * B_u).first_difference(B_u * (N + 1), n_max)
    rep.add("N B = B (N+1)", w is None, w)
    w = (N * C_u).first_difference(C_u * (N - 1), n_max)
    rep.add("N C = C (N-1)", w is None, w)
    for name in ("A", "D"):
        w = (N * mu[name]).first_difference(mu[name] * N, n_max)
        rep.add(f"N {name} = {name} N", w is None, w)
    if M2 is not None:
        w = B_u.first_difference(mu["A2"] * mu["B1"] + mu["B2"] * mu["D1"], n_max)
        rep.add("B = A2 B1 + B2 D1", w is None, w)
    return rep


# -- the ȷ correspondence --------------------------------------------------------


def occupancy_labels(layout: Layout, occ: tuple) -> tuple:
    """Coupled label ``(λ, μ)`` of a forgotten-layout basis state."""
    lam = occupancy_to_partition(occ[: layout.M1])
    mu = occupancy_to_partition(occ[layout.M1:]) if layout.M2 is not None else EMPTY
    return lam, mu


def labels_occupancy(layout: Layout, lam, mu=()) -> tuple:
    occ = partition_to_occupancy(lam, layout.M1)
    if layout.M2 is not None:
        occ = occ + partition_to_occupancy(mu, layout.M2)
    return occ


def project_site_zero(layout: Layout, vec: dict) -> dict:
    """Forget the site-0 occupancies of a physical-layout vector."""
    forgotten = Layout(layout.M1, layout.M2, True)
    keep = []
    for g in layout.groups():
        for i in range(1, layout.size(g) + 1):
            keep.append(layout.index(g, i))
    out: dict = {}
    for occ, c in vec.items():
        key = tuple(occ[i] for i in keep)
        out[key] = out[key] + c if key in out else c
    assert len(keep) == forgotten.sites
    return {k: v for k, v in out.items() if v}


def jmath_vector(layout: Layout, vec: dict) -> dict:
    """Forgotten-layout Fock vector -> ``{(λ, μ): coeff}``."""
    return {occupancy_labels(layout, occ): c for occ, c in vec.items()}


def jmath_matrix(M1: int, M2: int, N1: int, N2: int) -> list:
    """Rows ``(site-1..M occupancies of group 1, of group 2, λ, μ)`` of the sector.

    λ ranges over the ``N1 × M1`` box and μ over the ``N2 × M2`` box; the
    site-0 occupancies are ``N1 - l(λ)`` and ``N2 - l(μ)``.
    """
    rows = []
    for lam in enumerate_in_box(N1, M1):
        for mu in enumerate_in_box(N2, M2):
            rows.append({
                "occupancy_1": [N1 - len(lam)] + list(partition_to_occupancy(lam, M1)),
                "occupancy_2": [N2 - len(mu)] + list(partition_to_occupancy(mu, M2)),
                "lambda": to_text(lam),
                "mu": to_text(mu),
            })
    return rows


# -- B and C against H and H⊥ ------------------------------------------------------


def substituted_H(M: int, f: SymElem, alphabet: str = "x", var: str = "u", power: int = 2) -> SpectralPoly:
    """``H_M(alphabet - ∂̃, var^power) f`` projected to at most ``M`` columns on that side."""
    terms = f.to("p").terms
    out = SpectralPoly((var,))
    for k in range(M + 1):
        g = apply_substituted(qn_in_p(k), terms, alphabet)
        if not g:
            continue
        qg = SymElem._raw("p", g).to("Q")
        side = 0 if alphabet == "x" else 1
        kept = {key: c for key, c in qg.terms.items() if not key[side] or key[side][0] <= M}
        if kept:
            out.terms[(power * k,)] = SymElem._raw("Q", kept)
    return out


def substituted_H_perp(M: int, f: SymElem, alphabet: str = "x", var: str = "u", power: int = -2) -> SpectralPoly:
    """``H_M^⊥(alphabet - ∂̃, var^power) f``; the adjoint part only differentiates ``alphabet``."""
    terms = f.to("p").terms
    out = SpectralPoly((var,))
    for k in range(M + 1):
        g = apply_derivative_exp(k, terms, alphabet, +1)
        if g:
            out.terms[(power * k,)] = SymElem._raw("p", g).to("Q")
    return out


def _label_table(poly: SpectralPoly) -> dict:
    """SpectralPoly over Q-basis elements -> ``{(λ, μ): SpectralPoly}``."""
    out: dict = {}
    for e, elem in poly.terms.items():
        for key, c in elem.terms.items():
            term = SpectralPoly(poly.variables, {e: c})
            out[key] = out[key] + term if key in out else term
    return {k: v for k, v in out.items() if v}


def _fock_table(layout: Layout, vec: dict) -> dict:
    return {k: v for k, v in jmath_vector(layout, vec).items() if v}


def _table_diff(a: dict, b: dict):
    for key in sorted(set(a) | set(b)):
        x, y = a.get(key, SpectralPoly()), b.get(key, SpectralPoly())
        if x != y:
            return {"label": f"{to_text(key[0])}|{to_text(key[1])}", "fock": str(x), "symmetric": str(y)}
    return None


def dagger_at_inverse(op: FockOperator, var: str = "u") -> FockOperator:
    """``X^†(u^{-1})``: the q-boson dagger followed by ``u -> 1/u``."""
    return op.dagger().invert_variable(var)


def verify_B_equals_H(M1: int, M2: int, N1: int, N2: int, n_max: int | None = None) -> Report:
    """``u^{M_i}B_i(u)`` and ``u^{-M_i}C_i(u)`` against ``H_{M_i}`` and ``H^⊥_{M_i}`` under ȷ."""
    rep = Report("b-equals-h", {"M1": M1, "M2": M2, "N1": N1, "N2": N2})
    lay = Layout(M1, M2, True)
    mono = build_monodromy(M1, M2, "u", forgotten=True)
    phys = build_monodromy(M1, M2, "u", forgotten=False)
    play = phys["layout"]
    n_max = max(N1, N2) + 1 if n_max is None else n_max
    Mi = {1: M1, 2: M2}
    alph = {1: "x", 2: "y"}
    for i in (1, 2):
        Bt = mono[f"B{i}"] * _u("u", Mi[i])
        Ct = mono[f"C{i}"] * _u("u", -Mi[i])
        for lam in enumerate_in_box(N1, M1):
            for mu in enumerate_in_box(N2, M2):
                label = f"{to_text(lam)}|{to_text(mu)}"
                occ = labels_occupancy(lay, lam, mu)
                f = SymElem._raw("Q", {(lam, mu): ONE})
                fock = _fock_table(lay, Bt.apply_basis(occ))
                sym = _label_table(substituted_H(Mi[i], f, alph[i]))
                w = _table_diff(fock, sym)
                rep.add(f"B{i} {label}", w is None, w)
                fock = _fock_table(lay, Ct.apply_basis(occ))
                sym = _label_table(substituted_H_perp(Mi[i], f, alph[i]))
                w = _table_diff(fock, sym)
                rep.add(f"C{i} {label}", w is None, w)
                # forgetting site 0 after the physical B_i gives the forgotten B_i
                pocc = [0] * play.sites
                pocc[play.index(1, 0)] = N1 - len(lam)
                pocc[play.index(2, 0)] = N2 - len(mu)
                for j, n in enumerate(partition_to_occupancy(lam, M1), start=1):
                    pocc[play.index(1, j)] = n
                for j, n in enumerate(partition_to_occupancy(mu, M2), start=1):
                    pocc[play.index(2, j)] = n
                pv = project_site_zero(play, phys[f"B{i}"].apply_basis(tuple(pocc)))
                fv = mono[f"B{i}"].apply_basis(occ)
                ok = pv == fv
                rep.add(f"P B{i} P {label}", ok, None if ok else "projection differs")
        B = mono[f"B{i}"]
        Bd = dagger_at_inverse(B)
        for name, lhs, rhs in (
            ("A = u^-1 B", mono[f"A{i}"], B * _u("u", -1)),
            ("C = B†(1/u)", mono[f"C{i}"], Bd),
            ("D = u B†(1/u)", mono[f"D{i}"], Bd * _u("u", 1)),
        ):
            w = lhs.first_difference(rhs, n_max)
            rep.add(f"{name} (group {i})", w is None, w)
    return rep


# -- Bethe vectors -------------------------------------------------------------


def _uvars(N: int) -> list:
    return [f"u{j}" for j in range(1, N + 1)]


def _u_squares(names) -> list:
    return [_u(n, 2) for n in names]


def psi_tilde_expansion(N: int, M1: int, M2: int) -> Report:
    """``∏_j B_2(u_j)B_1(u_j)|0>`` against ``(u_1···u_N)^{-M1-M2} P_λ(u²)P_μ(u²)``, symbolic ``u_j``."""
    rep = Report("psi-tilde", {"N": N, "M1": M1, "M2": M2})
    mono = build_monodromy(M1, M2, "u")
    lay = mono["layout"]
    names = _uvars(N)
    vec = vacuum(lay.sites)
    for name in names:
        vec = mono["B1"].rename({"u": name}).apply(vec)
        vec = mono["B2"].rename({"u": name}).apply(vec)
    flay = Layout(M1, M2, True)
    got = _fock_table(flay, project_site_zero(lay, vec))
    squares = _u_squares(names)
    pref = SpectralPoly.constant(ONE)
    for n in names:
        pref = pref * _u(n, -M1 - M2)
    expected: dict = {}
    for lam in enumerate_in_box(N, M1):
        for mu in enumerate_in_box(N, M2):
            c = pref * hl_P_evaluate(lam, squares) * hl_P_evaluate(mu, squares)
            if c:
                expected[(lam, mu)] = c
    for key in sorted(set(got) | set(expected)):
        a, b = got.get(key, SpectralPoly()), expected.get(key, SpectralPoly())
        ok = a == b
        rep.add(f"{to_text(key[0])}|{to_text(key[1])}", ok, None if ok else {"fock": str(a), "formula": str(b)})
    return rep


def parse_rational(x) -> RatCoeff:
    if isinstance(x, RatCoeff):
        return x
    return RatCoeff(Fraction(x))


def _subsets(N: int):
    for i in range(N + 1):
        yield from itertools.combinations(range(N), i)


def psi_closed_form(N: int, M1: int, M2: int, u_values, reading: str = "pairs") -> dict:
    """The closed-form double sum for ``∏_j B(u_j)|0>`` at exact ``u_values``.

    ``reading="pairs"`` takes the product over ``a ∈ K`` and ``j ∉ K`` of
    ``(u_j² - t u_a²)/(u_j² - u_a²)``; ``reading="last"`` takes only the
    largest element of ``K``, as the index in the formula literally reads.
    """
    us = [parse_rational(x) for x in u_values]
    if len(set(us)) != len(us) or len({u * u for u in us}) != len(us):
        raise ValueError("u-values must have distinct squares")
    sq = [u * u for u in us]
    pre = ONE
    for u in us:
        pre = pre * u ** (M1 + 1 - M2)
    out: dict = {}
    for K in _subsets(N):
        c = pre
        for a in K:
            c = c * us[a] ** (-2 * M1 - 2)
        chosen = K if reading == "pairs" else K[-1:]
        for a in chosen:
            for j in range(N):
                if j in K if reading == "pairs" else j == a:
                    continue
                c = c * (sq[j] - T * sq[a]) / (sq[j] - sq[a])
        sub = [sq[a] for a in K]
        for lam in enumerate_in_box(len(K), M1):
            pl = hl_P_evaluate(lam, sub)
            if not pl:
                continue
            for mu in enumerate_in_box(N, M2):
                pm = hl_P_evaluate(mu, sq)
                if pm:
                    key = (lam, mu)
                    v = c * pl * pm
                    out[key] = out[key] + v if key in out else v
    return {k: v for k, v in out.items() if v}


def psi_direct(N: int, M1: int, M2: int, u_values) -> dict:
    """``∏_j B(u_j)|0>`` on the forgotten Fock space, evaluated at ``u_values``."""
    us = [parse_rational(x) for x in u_values]
    mono = build_monodromy(M1, M2, "u", forgotten=True)
    lay = mono["layout"]
    vec = vacuum(lay.sites)
    for j, u in enumerate(us):
        op = mono["B"].map_spectral(lambda c, u=u: _poly(c.evaluate({"u": u})) if c.variables else c)
        vec = op.apply(vec)
    out = {}
    for key, c in _fock_table(lay, vec).items():
        v = c.evaluate({}) if c.variables else c.terms.get((), ZERO)
        out[key] = v
    return {k: v for k, v in out.items() if v}


def exchange_relation_check(M: int = 1, n_max: int = 2) -> Report:
    """``B†(u^{-1})B(v) = (u²-tv²)/(u²-v²) B(v)B†(u^{-1}) - v²(1-t)/(u²-v²) B(u)B†(v^{-1})``."""
    rep = Report("exchange", {"M": M, "n_max": n_max})
    mu = build_monodromy(M, None, "u", forgotten=True)
    mv = build_monodromy(M, None, "v", forgotten=True)
    Bu, Bv = mu["B"], mv["B"]
    Bdu, Bdv = dagger_at_inverse(Bu, "u"), dagger_at_inverse(Bv, "v")
    clear = clearing_factor()
    lhs = Bdu * Bv * clear
    rhs = Bv * Bdu * (_u("u", 2) - _u("v", 2) * T) - Bu * Bdv * (_u("v", 2) * (ONE - T))
    w = lhs.first_difference(rhs, n_max)
    rep.add("exchange", w is None, w)
    # commutativity of u^{-1}B(u) + uB†(u^{-1}) for two spectral parameters
    Ku = Bu * _u("u", -1) + Bdu * _u("u", 1)
    Kv = Bv * _u("v", -1) + Bdv * _u("v", 1)
    w = (Ku * Kv).first_difference(Kv * Ku, n_max)
    rep.add("commutativity", w is None, w)
    return rep


def psi_expansion(N: int, M1: int, M2: int, u_values=None, reading: str = "pairs") -> Report:
    u_values = list(u_values) if u_values is not None else [2, 3, 5][:N]
    rep = Report("psi", {"N": N, "M1": M1, "M2": M2, "u_values": [str(x) for x in u_values], "reading": reading})
    got = psi_direct(N, M1, M2, u_values)
    expected = psi_closed_form(N, M1, M2, u_values, reading)
    for key in sorted(set(got) | set(expected)):
        a, b = got.get(key, ZERO), expected.get(key, ZERO)
        ok = a == b
        rep.add(f"{to_text(key[0])}|{to_text(key[1])}", ok, None if ok else {"fock": str(a), "formula": str(b)})
    return rep


# -- H⊥ / H exchange -------------------------------------------------------------


def _compose_spectral(op, poly: SpectralPoly) -> SpectralPoly:
    """Apply ``op(elem) -> SpectralPoly`` to every coefficient of ``poly``."""
    out = SpectralPoly()
    for e, elem in poly.terms.items():
        inner = op(elem)
        out = out + SpectralPoly(poly.variables, {e: ONE}) * inner if inner else out
    return out


def _sp_scale(c: SpectralPoly, poly: SpectralPoly) -> SpectralPoly:
    out = SpectralPoly()
    for e1, x in c.terms.items():
        for e2, elem in poly.terms.items():
            term = SpectralPoly(c.variables, {e1: ONE}) * SpectralPoly(poly.variables, {e2: elem.scale(x)})
            out = out + term
    return out


def _to_Q(poly: SpectralPoly) -> SpectralPoly:
    return poly.map_coeffs(lambda e: e.to("Q"))


def hperp_h_sides(M: int, f: SymElem, project: bool = True) -> tuple:
    """Both sides of the H⊥/H exchange multiplied by ``(1 - zw)``."""
    H = lambda var, inv=False: (lambda e: (apply_H(M, e, var, project).invert_variable(var) if inv else apply_H(M, e, var, project)))
    Hp = lambda var, inv=False: (lambda e: (apply_H_perp(M, e, var).invert_variable(var) if inv else apply_H_perp(M, e, var)))
    zw = _u("z") * _u("w")
    one = SpectralPoly.constant(ONE)
    lhs = _compose_spectral(Hp("z"), apply_H(M, f, "w", project))
    lhs = _sp_scale(one - zw, lhs)
    a = _compose_spectral(H("w"), apply_H_perp(M, f, "z"))
    a = _sp_scale(one - zw * T, a)
    b = _compose_spectral(H("z", True), apply_H_perp(M, f, "w").invert_variable("w"))
    b = _sp_scale(zw ** (M + 1) * (ONE - T), b)
    return _to_Q(lhs), _to_Q(a - b if b else a)


def verify_Hperp_H_commutation(M: int, degree_cap: int = 3, project: bool = True, t_zero: bool = False) -> Report:
    """The H⊥/H exchange on single-alphabet Q-basis elements of ``Λ_M`` up to ``degree_cap``."""
    rep = Report("hperp-h", {"M": M, "degree_cap": degree_cap, "project": project, "t_zero": t_zero})
    for n in range(degree_cap + 1):
        for lam in enumerate_in_box(n, M):
            if lam.size != n:
                continue
            f = SymElem._raw("Q", {(lam, EMPTY): ONE})
            lhs, rhs = hperp_h_sides(M, f, project)
            if t_zero:
                lhs = lhs.map_coeffs(lambda e: e.at_t_zero())
                rhs = rhs.map_coeffs(lambda e: e.at_t_zero())
            ok = lhs == rhs
            rep.add(to_text(lam), ok, None if ok else {"lhs": str(lhs), "rhs": str(rhs)})
    return rep


# -- Hamiltonian -----------------------------------------------------------------


def build_hamiltonian(M: int) -> FockOperator:
    """``H = -1/2 Σ_{i=0}^{M} (B†_i B_{i+1} + B_i B†_{i+1} - 2N_i)`` with site ``M+1`` identified with site 0."""
    if M < 1:
        raise ValueError("M must be at least 1")
    sites = M + 1
    half = RatCoeff(Fraction(-1, 2))
    H = FockOperator.zero(sites)
    for i in range(sites):
        j = (i + 1) % sites
        H = H + (FockOperator.site(sites, i, "c") * FockOperator.site(sites, j, "a")) * half
        H = H + (FockOperator.site(sites, i, "a") * FockOperator.site(sites, j, "c")) * half
        H = H + FockOperator.site(sites, i, "n")
    return H


def hamiltonian_block(M: int, particles: int) -> tuple:
    """States with ``particles`` particles and the dense block of ``H`` on them."""
    H = build_hamiltonian(M)
    states = [occ for occ in itertools.product(range(particles + 1), repeat=M + 1) if sum(occ) == particles]
    index = {s: i for i, s in enumerate(states)}
    mat = [[ZERO] * len(states) for _ in states]
    for col in states:
        for row, c in H.apply_basis(col).items():
            mat[index[row]][index[col]] = c.terms.get((), ZERO)
    return states, mat


def verify_hamiltonian(M: int = 2, n_max: int = 2) -> Report:
    rep = Report("hamiltonian", {"M": M, "n_max": n_max})
    H = build_hamiltonian(M)
    N = number_operator(Layout(M))
    w = (H * N).first_difference(N * H, n_max)
    rep.add("[H, N] = 0", w is None, w)
    rep.add("H |0> = 0", not H.apply(vacuum(M + 1)))
    return rep


def verify_site_algebra(n_max: int = 3) -> Report:
    """``[N, B] = -B``, ``[N, B†] = B†``, ``[B, B†] = q^N`` on one site."""
    rep = Report("site-algebra", {"n_max": n_max})
    B, Bd, N, K = (FockOperator.site(1, 0, x) for x in "acnk")
    for name, lhs, rhs in (("[N,B]=-B", N * B - B * N, -B), ("[N,B†]=B†", N * Bd - Bd * N, Bd), ("[B,B†]=q^N", B * Bd - Bd * B, K)):
        w = lhs.first_difference(rhs, n_max)
        rep.add(name, w is None, w)
    return rep
