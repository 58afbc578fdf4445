"""Two-alphabet symmetric-function elements in power-sum, q- or Q-bases.

A term key is a pair of partitions ``(λ, μ)``.  In the p-basis it stands for
``p_λ(x) p_μ(y)``; in the q-basis for ``q_λ(x) q_μ(y)``; in the Q-basis for the
coupled Hall-Littlewood function ``Q_[λ,μ]``.  Single-alphabet elements simply
have ``μ = ∅`` everywhere.  Power sums are normalised by ``x_n = p_n(x)/n``.
"""

from __future__ import annotations

import os
from functools import lru_cache
from math import factorial

from chl.coeff import ONE, ZERO, RatCoeff, as_coeff, one_minus_t_power
from chl.partitions import EMPTY, Partition, partitions_of, to_text, z_lambda

BASES = ("p", "q", "Q")

DEFAULT_SINGLE_CAP = 12
DEFAULT_COUPLED_CAP = 10


def default_cap(coupled: bool = True) -> int:
    env = os.environ.get("CHL_DEGREE_CAP")
    if env:
        return int(env)
    return DEFAULT_COUPLED_CAP if coupled else DEFAULT_SINGLE_CAP


class CapExceeded(ArithmeticError):
    """A truncated computation was asked to go beyond its degree cap."""


def merge(a: Partition, b: Partition) -> Partition:
    if not a:
        return b
    if not b:
        return a
    return tuple.__new__(Partition, tuple(sorted(a + b, reverse=True)))


def add_into(acc: dict, terms: dict, scale=None) -> dict:
    """``acc += scale * terms`` in place, dropping zeros."""
    for k, c in terms.items():
        if scale is not None:
            c = scale * c
        if k in acc:
            s = acc[k] + c
            if s:
                acc[k] = s
            else:
                del acc[k]
        elif c:
            acc[k] = c
    return acc


class SymElem:
    """Immutable sparse element; ``terms`` maps ``(λ, μ)`` to nonzero RatCoeff."""

    __slots__ = ("basis", "terms", "_hash")

    def __init__(self, basis: str, terms=None):
        if basis not in BASES:
            raise ValueError(f"unknown basis {basis!r}")
        self.basis = basis
        self.terms = {}
        if terms:
            for k, c in terms.items():
                if isinstance(k, tuple) and len(k) == 2 and isinstance(k[0], tuple):
                    key = (Partition(k[0]), Partition(k[1]))
                else:
                    key = (Partition(k), EMPTY)
                c = as_coeff(c)
                if c:
                    self.terms[key] = self.terms[key] + c if key in self.terms else c
            self.terms = {k: c for k, c in self.terms.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, basis, terms) -> "SymElem":
        obj = cls.__new__(cls)
        obj.basis, obj.terms, obj._hash = basis, terms, None
        return obj

    @classmethod
    def one(cls, basis="q") -> "SymElem":
        return cls._raw(basis, {(EMPTY, EMPTY): ONE})

    @classmethod
    def zero(cls, basis="q") -> "SymElem":
        return cls._raw(basis, {})

    @classmethod
    def monomial(cls, basis, lam=(), mu=(), coeff=ONE) -> "SymElem":
        return cls(basis, {(Partition(lam), Partition(mu)): coeff})

    # -- linear structure -------------------------------------------------
    def _same(self, other: "SymElem") -> "SymElem":
        if not isinstance(other, SymElem):
            raise TypeError(f"cannot combine SymElem with {type(other).__name__}")
        return other if other.basis == self.basis else other.to(self.basis)

    def __add__(self, other):
        if not isinstance(other, SymElem):
            if other == 0:
                return self
            other = SymElem.one(self.basis) * as_coeff(other)
        other = self._same(other)
        return SymElem._raw(self.basis, add_into(dict(self.terms), other.terms))

    def __radd__(self, other):
        return self + other

    def __neg__(self):
        return SymElem._raw(self.basis, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "SymElem":
        c = as_coeff(c)
        if not c:
            return SymElem._raw(self.basis, {})
        return SymElem._raw(self.basis, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, SymElem):
            return self.product(other)
        if isinstance(other, (RatCoeff, int)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (RatCoeff, int)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, c):
        return self.scale(as_coeff(c).inverse())

    def product(self, other: "SymElem") -> "SymElem":
        """Algebra product; p- and q-bases are multiplicative, Q goes through q."""
        basis = self.basis if self.basis != "Q" else "q"
        a, b = self.to(basis), other.to(basis)
        out: dict = {}
        for (l1, m1), c1 in a.terms.items():
            for (l2, m2), c2 in b.terms.items():
                key = (merge(l1, l2), merge(m1, m2))
                v = c1 * c2
                if key in out:
                    v = out[key] + v
                out[key] = v
        return SymElem._raw(basis, {k: c for k, c in out.items() if c})

    # -- comparison -------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, SymElem):
            if other.basis != self.basis:
                return self.to("p").terms == other.to("p").terms
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.basis, frozenset(self.to("p").terms.items())))
        return self._hash

    # -- grading ----------------------------------------------------------
    def degrees(self) -> set[int]:
        """Signed degrees present (deg x_n = n, deg y_n = -n)."""
        return {l.size - m.size for l, m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def max_weight(self) -> int:
        return max((l.size + m.size for l, m in self.terms), default=0)

    def coefficient(self, lam=(), mu=()) -> RatCoeff:
        return self.terms.get((Partition(lam), Partition(mu)), ZERO)

    def map_coeffs(self, fn) -> "SymElem":
        out = {}
        for k, c in self.terms.items():
            v = fn(c)
            if v:
                out[k] = v
        return SymElem._raw(self.basis, out)

    def at_t_zero(self) -> "SymElem":
        return self.map_coeffs(lambda c: c.substitute_t_zero())

    # -- basis change -----------------------------------------------------
    def to(self, basis: str) -> "SymElem":
        if basis == self.basis:
            return self
        if basis == "p":
            if self.basis == "Q":
                return self.to("q").to("p")
            return SymElem._raw("p", _expand(self.terms, _q_monomial_in_p))
        if basis == "q":
            if self.basis == "p":
                return SymElem._raw("q", _expand(self.terms, _p_monomial_in_q))
            return SymElem._raw("q", _expand(self.terms, _Q_in_q))
        if basis == "Q":
            return SymElem._raw("Q", q_to_Q_terms(self.to("q").terms))
        raise ValueError(basis)

    def to_p(self):
        return self.to("p")

    def to_q(self):
        return self.to("q")

    # -- display ----------------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _term_order(kv[0]))

    def __repr__(self):
        return f"SymElem({self.basis!r}, {self})"

    def __str__(self):
        if not self.terms:
            return "0"
        coupled = any(m for _, m in self.terms)
        pieces = []
        for (l, m), c in self.sorted_terms():
            label = _label(self.basis, l, m, coupled)
            if label == "1":
                pieces.append(c.short())
            else:
                pieces.append(label if c == 1 else f"{c.short()} * {label}")
        return " + ".join(pieces)


def _term_order(key):
    l, m = key
    return (-(l.size + m.size), -l.size, tuple(-p for p in l), tuple(-p for p in m))


def _label(basis, lam, mu, coupled) -> str:
    if basis == "p":
        if not lam and not mu:
            return "1"
        if not coupled:
            return _pmono(lam, "p")
        return " ".join(x for x in (_pmono(lam, "px"), _pmono(mu, "py")) if x)
    if coupled:
        return f"{basis}[{to_text(lam)}|{to_text(mu)}]"
    if not lam:
        return "1"
    return f"{basis}[{','.join(map(str, lam))}]"


def _pmono(lam, prefix) -> str:
    counts: dict[int, int] = {}
    for p in lam:
        counts[p] = counts.get(p, 0) + 1
    return " ".join(f"{prefix}{i}" if m == 1 else f"{prefix}{i}^{m}" for i, m in sorted(counts.items()))


def _expand(terms: dict, fn) -> dict:
    out: dict = {}
    for key, c in terms.items():
        add_into(out, fn(key), c)
    return out


# -- single-alphabet building blocks (as {Partition: RatCoeff}) -------------

@lru_cache(maxsize=None)
def qn_in_p(n: int) -> dict:
    """``q_n = Σ_{ρ ⊢ n} z_ρ^{-1} ∏ (1 - t^{ρ_i}) p_ρ``; empty for n < 0."""
    if n < 0:
        return {}
    out = {}
    for rho in partitions_of(n):
        c = RatCoeff(1)
        for r in rho:
            c = c * one_minus_t_power(r)
        out[rho] = c / z_lambda(rho)
    return out


@lru_cache(maxsize=None)
def qneg_in_p(n: int) -> dict:
    """Coefficient of ``z^n`` in ``exp(-Σ (1 - t^m) p_m z^m / m)``."""
    if n < 0:
        return {}
    out = {}
    for rho in partitions_of(n):
        c = RatCoeff((-1) ** len(rho))
        for r in rho:
            c = c * one_minus_t_power(r)
        out[rho] = c / z_lambda(rho)
    return out


@lru_cache(maxsize=None)
def pn_in_q(n: int) -> dict:
    """``p_n = n/(1 - t^n) [z^n] log(Σ q_k z^k)``."""
    out = {}
    pref = RatCoeff(n) / one_minus_t_power(n)
    for rho in partitions_of(n):
        length = len(rho)
        ways = factorial(length)
        for m in rho.multiplicities().values():
            ways //= factorial(m)
        out[rho] = pref * RatCoeff((-1) ** (length + 1) * ways) / length
    return out


def _mul_single(a: dict, b: dict) -> dict:
    out: dict = {}
    for l1, c1 in a.items():
        for l2, c2 in b.items():
            key = merge(l1, l2)
            v = c1 * c2
            out[key] = out[key] + v if key in out else v
    return {k: c for k, c in out.items() if c}


@lru_cache(maxsize=None)
def q_partition_in_p(lam: Partition) -> dict:
    if not lam:
        return {EMPTY: ONE}
    return _mul_single(q_partition_in_p(Partition(lam[1:])), qn_in_p(lam[0]))


@lru_cache(maxsize=None)
def p_partition_in_q(lam: Partition) -> dict:
    if not lam:
        return {EMPTY: ONE}
    return _mul_single(p_partition_in_q(Partition(lam[1:])), pn_in_q(lam[0]))


def _pair(a: dict, b: dict) -> dict:
    return {(l, m): c1 * c2 for l, c1 in a.items() for m, c2 in b.items()}


@lru_cache(maxsize=None)
def _q_monomial_in_p(key) -> dict:
    return _pair(q_partition_in_p(key[0]), q_partition_in_p(key[1]))


@lru_cache(maxsize=None)
def _p_monomial_in_q(key) -> dict:
    return _pair(p_partition_in_q(key[0]), p_partition_in_q(key[1]))


def _Q_in_q(key) -> dict:
    from chl.raising import coupled_Q_terms

    return coupled_Q_terms(key[0], key[1])


def _basis_order(key):
    """Processing order for the inverse triangular change of basis."""
    l, m = key
    return (-(l.size + m.size), tuple(l), tuple(m))


def q_to_Q_terms(terms: dict) -> dict:
    """Rewrite a q-basis element in the coupled Hall-Littlewood basis.

    ``Q_[λ,μ] = q_[λ,μ] + (same sizes, dominating) + (both sizes smaller)``, so
    peeling off the largest-size, lexicographically smallest term terminates.
    """
    work = dict(terms)
    out: dict = {}
    while work:
        key = min(work, key=_basis_order)
        c = work[key]
        out[key] = c
        add_into(work, _Q_in_q(key), -c)
        if key in work:
            raise AssertionError(f"leading coefficient of Q{key} is not 1")
    return out


# -- derivative operators on p-basis ----------------------------------------

def remove_parts(lam: Partition, n: int, j: int):
    """``∂_{p_n}^j p_λ``: returns (factor, new partition) or None."""
    m = lam.count(n)
    if m < j:
        return None
    factor = 1
    for i in range(j):
        factor *= m - i
    parts = list(lam)
    for _ in range(j):
        parts.remove(n)
    return factor, tuple.__new__(Partition, tuple(parts))


def differentiate(terms: dict, n: int, alphabet: str = "x", times: int = 1) -> dict:
    out: dict = {}
    idx = 0 if alphabet == "x" else 1
    for key, c in terms.items():
        r = remove_parts(key[idx], n, times)
        if r is None:
            continue
        f, rest = r
        new = (rest, key[1]) if idx == 0 else (key[0], rest)
        v = c * f
        out[new] = out[new] + v if new in out else v
    return {k: v for k, v in out.items() if v}


def p_scalar(lam: Partition) -> RatCoeff:
    """``<p_λ, p_λ> = z_λ ∏ (1 - t^{λ_i})^{-1}``."""
    c = RatCoeff(z_lambda(lam))
    for p in lam:
        c = c / one_minus_t_power(p)
    return c
