"""Value types shared by every module.

``CanonC`` is the element b^k (ab)^l a^m of the Rédei semigroup, stored as
its exponent triple.  ``BicyclicNF`` is b^i a^j in the bicyclic monoid.
Both are tuples underneath, so they hash, sort and unpack cheaply; the
exhaustive checks build millions of them.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, NamedTuple

from .errors import InvalidElement


def _parse_ints(text: str, count: int, what: str) -> tuple[int, ...]:
    parts = [p.strip() for p in text.strip().split(",")]
    if len(parts) != count:
        raise InvalidElement(f"{what} needs {count} comma-separated integers, got {text!r}")
    try:
        values = tuple(int(p) for p in parts)
    except ValueError:
        raise InvalidElement(f"{what}: not an integer list: {text!r}") from None
    return values


class _Triple(NamedTuple):
    k: int
    l: int  # noqa: E741
    m: int


class CanonC(_Triple):
    """b^k (ab)^l a^m with k, l, m >= 0 and k + l + m > 0."""

    __slots__ = ()

    def __new__(cls, k: int, l: int, m: int) -> CanonC:  # noqa: E741
        if k < 0 or l < 0 or m < 0 or k + l + m == 0:
            raise InvalidElement(f"not an element of C: ({k},{l},{m})")
        return super().__new__(cls, k, l, m)

    @classmethod
    def parse(cls, text: str) -> CanonC:
        return cls(*_parse_ints(text, 3, "CanonC"))

    def __str__(self) -> str:
        return f"{self.k},{self.l},{self.m}"

    def __repr__(self) -> str:
        return f"CanonC({self.k},{self.l},{self.m})"


class _Pair(NamedTuple):
    i: int
    j: int


class BicyclicNF(_Pair):
    """b^i a^j in the bicyclic monoid; BicyclicNF(0, 0) is the identity."""

    __slots__ = ()

    def __new__(cls, i: int, j: int) -> BicyclicNF:
        if i < 0 or j < 0:
            raise InvalidElement(f"not an element of B(a,b): <{i},{j}>")
        return super().__new__(cls, i, j)

    @classmethod
    def parse(cls, text: str) -> BicyclicNF:
        return cls(*_parse_ints(text, 2, "BicyclicNF"))

    def __str__(self) -> str:
        return f"{self.i},{self.j}"

    def __repr__(self) -> str:
        return f"BicyclicNF({self.i},{self.j})"


@dataclass(frozen=True)
class Region:
    """Inclusive exponent caps; the truncation every exhaustive check runs on."""

    K: int
    L: int
    M: int

    def __post_init__(self) -> None:
        if min(self.K, self.L, self.M) < 0:
            raise InvalidElement(f"region caps must be nonnegative: {self}")

    @classmethod
    def parse(cls, text: str) -> Region:
        return cls(*_parse_ints(text, 3, "Region"))

    @classmethod
    def cube(cls, n: int) -> Region:
        return cls(n, n, n)

    def grow(self, by: int) -> Region:
        return Region(self.K + by, self.L + by, self.M + by)

    def __iter__(self) -> Iterator[CanonC]:
        for k, l, m in product(range(self.K + 1), range(self.L + 1), range(self.M + 1)):  # noqa: E741
            if k or l or m:
                yield CanonC(k, l, m)

    def __contains__(self, x: object) -> bool:
        return (
            isinstance(x, CanonC)
            and x.k <= self.K
            and x.l <= self.L
            and x.m <= self.M
        )

    def __len__(self) -> int:
        return (self.K + 1) * (self.L + 1) * (self.M + 1) - 1

    def __str__(self) -> str:
        return f"{self.K},{self.L},{self.M}"


@dataclass(frozen=True)
class Cell:
    """The cell C_{i,j} = {b^i (ab)^p a^j : p >= 0}."""

    i: int
    j: int

    def __contains__(self, x: object) -> bool:
        return isinstance(x, CanonC) and x.k == self.i and x.m == self.j

    @classmethod
    def of(cls, x: CanonC) -> Cell:
        return cls(x.k, x.m)

    def within(self, region: Region) -> frozenset[CanonC]:
        if self.i > region.K or self.j > region.M:
            return frozenset()
        return frozenset(
            CanonC(self.i, p, self.j)
            for p in range(region.L + 1)
            if self.i or p or self.j
        )
