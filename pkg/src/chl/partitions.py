"""Young-diagram combinatorics."""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from math import comb

from chl.coeff import ONE, RatCoeff, one_minus_t_power


class Partition(tuple):
    """Immutable weakly decreasing tuple of positive integers.

    Trailing zeros are stripped on construction, so ``Partition((2, 1, 0))``
    equals ``Partition((2, 1))``.
    """

    __slots__ = ()

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(p < 0 for p in parts):
            raise ValueError(f"negative part in {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts not weakly decreasing: {parts}")
        return tuple.__new__(cls, parts)

    @classmethod
    def from_vector(cls, vec) -> "Partition":
        """Sort an index vector and drop zeros (negative entries are an error)."""
        return tuple.__new__(cls, tuple(sorted((v for v in vec if v), reverse=True)))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        text = text.strip()
        if text in ("-", ""):
            return EMPTY
        return cls(int(p) for p in text.split(","))

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def multiplicity(self, i: int) -> int:
        return self.count(i)

    def multiplicities(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for p in self:
            out[p] = out.get(p, 0) + 1
        return out

    def part(self, i: int) -> int:
        """``i``-th part (1-based), 0 beyond the length."""
        return self[i - 1] if i <= len(self) else 0

    def conjugate(self) -> "Partition":
        return conjugate(self)

    def contains(self, other: "Partition") -> bool:
        return len(other) <= len(self) and all(a >= b for a, b in zip(self, other))

    def dominates(self, other: "Partition") -> bool:
        """``self >= other`` in dominance order (sizes must agree)."""
        if self.size != other.size:
            return False
        a = b = 0
        for i in range(max(len(self), len(other))):
            a += self.part(i + 1)
            b += other.part(i + 1)
            if a < b:
                return False
        return True

    def __repr__(self):
        return f"Partition({tuple(self)!r})"

    def __str__(self):
        return to_text(self)


EMPTY = Partition()


def to_text(lam) -> str:
    return ",".join(str(p) for p in lam) if lam else "-"


def conjugate(lam) -> Partition:
    if not lam:
        return EMPTY
    return tuple.__new__(Partition, tuple(sum(1 for p in lam if p >= i) for i in range(1, lam[0] + 1)))


def interlaces(lam, mu) -> bool:
    """``lam ≻ mu``: lam_1 >= mu_1 >= lam_2 >= mu_2 >= ..."""
    if len(mu) > len(lam) or len(lam) > len(mu) + 1:
        return False
    for i, l in enumerate(lam):
        m = mu[i] if i < len(mu) else 0
        if l < m:
            return False
        if i + 1 < len(lam) and m < lam[i + 1]:
            return False
    return True


def is_horizontal_strip(lam, mu, n: int | None = None) -> bool:
    """True iff ``mu ⊆ lam`` and ``lam - mu`` has at most one box per column."""
    lam, mu = Partition(lam), Partition(mu)
    if not lam.contains(mu):
        return False
    if n is not None and lam.size - mu.size != n:
        return False
    lc, mc = conjugate(lam), conjugate(mu)
    return all(lc[i] - (mc[i] if i < len(mc) else 0) <= 1 for i in range(len(lc)))


def psi_coefficient(lam, mu) -> RatCoeff:
    """Pieri/branching coefficient ``ψ_{λ/μ}(t) = ∏_{j∈J} (1 - t^{m_j(μ)})``.

    ``J`` is the set of columns ``j`` with ``θ'_j < θ'_{j+1}`` for ``θ = λ - μ``.
    """
    lam, mu = Partition(lam), Partition(mu)
    if not is_horizontal_strip(lam, mu):
        raise ValueError(f"{to_text(lam)}/{to_text(mu)} is not a horizontal strip")
    return _psi(lam, mu)


@lru_cache(maxsize=None)
def _psi(lam: Partition, mu: Partition) -> RatCoeff:
    lc, mc = conjugate(lam), conjugate(mu)
    width = len(lc) + 1
    theta = [(lc[i] if i < len(lc) else 0) - (mc[i] if i < len(mc) else 0) for i in range(width + 1)]
    out = ONE
    for j in range(1, width + 1):
        if theta[j - 1] < theta[j]:
            out = out * one_minus_t_power(mu.multiplicity(j))
    return out


def partitions_of(n: int, max_part: int | None = None, max_len: int | None = None) -> list[Partition]:
    """Partitions of ``n`` in lexicographically decreasing order."""
    if max_part is None:
        max_part = n
    if max_len is None:
        max_len = n
    return [Partition(p) for p in _partitions(n, max_part, max_len)]


@lru_cache(maxsize=None)
def _partitions(n, max_part, max_len):
    if n == 0:
        return ((),)
    if max_len == 0:
        return ()
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in _partitions(n - first, first, max_len - 1):
            out.append((first,) + rest)
    return tuple(out)


def graded_lex_key(lam):
    """Order by size, then lexicographically decreasing within a size."""
    return (sum(lam), tuple(-p for p in lam))


def partitions_up_to(n: int) -> list[Partition]:
    """All partitions with ``|λ| <= n`` in graded-lex order."""
    out = []
    for k in range(n + 1):
        out.extend(partitions_of(k))
    return out


def enumerate_in_box(rows: int, cols: int) -> list[Partition]:
    """Partitions with at most ``rows`` parts and ``λ_1 <= cols``, graded-lex ordered."""
    out = []
    for n in range(rows * cols + 1):
        out.extend(partitions_of(n, max_part=cols, max_len=rows))
    return out


def box_count(rows: int, cols: int) -> int:
    return comb(rows + cols, rows)


def occupancy_to_partition(occ) -> Partition:
    """``(n_1, ..., n_M) ↦ 1^{n_1} 2^{n_2} ... M^{n_M}``."""
    parts = []
    for i in range(len(occ), 0, -1):
        parts.extend([i] * occ[i - 1])
    return tuple.__new__(Partition, tuple(parts))


def partition_to_occupancy(lam, M: int) -> tuple[int, ...]:
    lam = Partition(lam)
    if lam and lam[0] > M:
        raise ValueError(f"{to_text(lam)} has more than {M} columns")
    return tuple(lam.multiplicity(i) for i in range(1, M + 1))


def occupancies(M: int, total: int):
    """Occupancy vectors ``(n_1..n_M)`` with ``sum n_i <= total``."""
    for occ in product(range(total + 1), repeat=M):
        if sum(occ) <= total:
            yield occ


def z_lambda(lam) -> int:
    """``z_λ = ∏ i^{m_i} m_i!``."""
    out = 1
    for i, m in Partition(lam).multiplicities().items():
        for k in range(1, m + 1):
            out *= i * k
    return out


