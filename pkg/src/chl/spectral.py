"""Sparse Laurent polynomials in named spectral parameters.

Coefficients can be any ring element that supports ``+``, ``-``, ``*`` and
truthiness as a zero test: :class:`~chl.coeff.RatCoeff`, symmetric-function
elements or Fock operators.  Spectral variables are central, so products keep
coefficient order (left factor first), which matters for operator
coefficients.
"""

from __future__ import annotations

from chl.coeff import ONE, RatCoeff

_PREFERRED = ("u", "v", "z", "w")


def _var_key(name: str):
    base = name.rstrip("0123456789")
    idx = name[len(base):]
    rank = _PREFERRED.index(base) if base in _PREFERRED else len(_PREFERRED)
    return (rank, base, int(idx) if idx else -1)


def canonical_vars(names) -> tuple[str, ...]:
    return tuple(sorted(set(names), key=_var_key))


class SpectralPoly:
    """``terms`` maps exponent tuples over ``variables`` to nonzero coefficients."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables=(), terms=None):
        self.variables = tuple(variables)
        self.terms = {}
        if terms:
            for e, c in terms.items():
                if c:
                    self.terms[tuple(e)] = c

    # -- constructors -----------------------------------------------------
    @classmethod
    def constant(cls, c, variables=()) -> "SpectralPoly":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, name: str, power: int = 1, coeff=ONE) -> "SpectralPoly":
        return cls((name,), {(power,): coeff})

    @classmethod
    def monomial(cls, exps: dict, coeff=ONE) -> "SpectralPoly":
        variables = canonical_vars(exps)
        return cls(variables, {tuple(exps[v] for v in variables): coeff})

    # -- alignment --------------------------------------------------------
    def over(self, variables) -> "SpectralPoly":
        """Re-express over a superset of variables."""
        variables = tuple(variables)
        if variables == self.variables:
            return self
        missing = set(self.variables) - set(variables)
        if missing:
            raise ValueError(f"variables {missing} not in target {variables}")
        pos = [self.variables.index(v) if v in self.variables else None for v in variables]
        out = SpectralPoly(variables)
        for e, c in self.terms.items():
            out.terms[tuple(e[p] if p is not None else 0 for p in pos)] = c
        return out

    def _aligned(self, other: "SpectralPoly"):
        if self.variables == other.variables:
            return self, other
        vs = canonical_vars(self.variables + other.variables)
        return self.over(vs), other.over(vs)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, SpectralPoly):
            other = SpectralPoly.constant(other, self.variables)
        a, b = self._aligned(other)
        terms = dict(a.terms)
        for e, c in b.terms.items():
            if e in terms:
                s = terms[e] + c
                if s:
                    terms[e] = s
                else:
                    del terms[e]
            else:
                terms[e] = c
        out = SpectralPoly(a.variables)
        out.terms = terms
        return out

    def __radd__(self, other):
        return self + other

    def __neg__(self):
        out = SpectralPoly(self.variables)
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if not isinstance(other, SpectralPoly):
            other = SpectralPoly.constant(other, self.variables)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, SpectralPoly):
            out = SpectralPoly(self.variables)
            for e, c in self.terms.items():
                p = c * other
                if p:
                    out.terms[e] = p
            return out
        a, b = self._aligned(other)
        terms: dict = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                p = c1 * c2
                if e in terms:
                    p = terms[e] + p
                terms[e] = p
        out = SpectralPoly(a.variables)
        out.terms = {e: c for e, c in terms.items() if c}
        return out

    def __rmul__(self, other):
        out = SpectralPoly(self.variables)
        for e, c in self.terms.items():
            p = other * c
            if p:
                out.terms[e] = p
        return out

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials can be inverted")
            (e, c), = self.terms.items()
            inv = c.inverse() if hasattr(c, "inverse") else ONE / c
            return SpectralPoly(self.variables, {tuple(-x * (-k) for x in e): inv ** (-k)})
        out = SpectralPoly.constant(ONE, self.variables)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- transformations --------------------------------------------------
    def map_coeffs(self, fn) -> "SpectralPoly":
        out = SpectralPoly(self.variables)
        for e, c in self.terms.items():
            v = fn(c)
            if v:
                out.terms[e] = v
        return out

    def invert_variable(self, name: str) -> "SpectralPoly":
        """Substitute ``name -> 1/name``."""
        if name not in self.variables:
            return self
        i = self.variables.index(name)
        out = SpectralPoly(self.variables)
        out.terms = {e[:i] + (-e[i],) + e[i + 1:]: c for e, c in self.terms.items()}
        return out

    def rename(self, mapping: dict) -> "SpectralPoly":
        names = [mapping.get(v, v) for v in self.variables]
        vs = canonical_vars(names)
        out = SpectralPoly(vs)
        for e, c in self.terms.items():
            new = [0] * len(vs)
            for name, x in zip(names, e):
                new[vs.index(name)] += x
            key = tuple(new)
            out.terms[key] = out.terms[key] + c if key in out.terms else c
        out.terms = {e: c for e, c in out.terms.items() if c}
        return out

    def evaluate(self, values: dict):
        """Substitute RatCoeff values for some variables; returns a SpectralPoly
        over the remaining ones (or the bare coefficient if none remain)."""
        keep = [v for v in self.variables if v not in values]
        idx_keep = [self.variables.index(v) for v in keep]
        out = SpectralPoly(keep)
        for e, c in self.terms.items():
            factor = ONE
            for v, x in zip(self.variables, e):
                if v in values and x:
                    factor = factor * values[v] ** x
            key = tuple(e[i] for i in idx_keep)
            val = factor * c if isinstance(c, RatCoeff) else c.__rmul__(factor) if hasattr(c, "__rmul__") else factor * c
            out.terms[key] = out.terms[key] + val if key in out.terms else val
        out.terms = {e: c for e, c in out.terms.items() if c}
        if keep:
            return out
        return out.terms.get((), None)

    # -- inspection -------------------------------------------------------
    def coefficient(self, exps) -> object:
        if isinstance(exps, dict):
            exps = tuple(exps.get(v, 0) for v in self.variables)
        return self.terms.get(tuple(exps))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, SpectralPoly):
            other = SpectralPoly.constant(other, self.variables)
        a, b = self._aligned(other)
        return a.terms == b.terms

    def __hash__(self):
        return hash(frozenset(self.over(canonical_vars(self.variables)).terms.items()))

    def coefficient_kind(self):
        kinds = {type(c) for c in self.terms.values()}
        if len(kinds) > 1:
            raise TypeError(f"mixed coefficient kinds {kinds}")
        return kinds.pop() if kinds else None

    def sorted_terms(self):
        """Terms in graded-lex order on exponent vectors."""
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))

    def __repr__(self):
        return f"SpectralPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for e, c in self.sorted_terms():
            mono = " ".join(v if x == 1 else f"{v}^{x}" for v, x in zip(self.variables, e) if x)
            cs = c.short() if isinstance(c, RatCoeff) else f"[{c}]"
            pieces.append(f"{cs} * {mono}" if mono else cs)
        return " + ".join(pieces)


def product(factors, variables=()):
    out = SpectralPoly.constant(ONE, variables)
    for f in factors:
        out = out * f
    return out


def spectral_identity_check(lhs: SpectralPoly, rhs: SpectralPoly, denominators=()) -> bool:
    """True iff ``(∏ denominators)·lhs == (∏ denominators)·rhs`` term by term."""
    kinds = {k for k in (lhs.coefficient_kind(), rhs.coefficient_kind()) if k is not None}
    if len(kinds) > 1:
        raise TypeError(f"mixed coefficient kinds {kinds}")
    clear = product(denominators)
    return clear * lhs == clear * rhs
