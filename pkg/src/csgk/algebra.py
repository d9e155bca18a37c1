"""Closed-form arithmetic in the Rédei semigroup C and the bicyclic monoid.

Elements of C are triples (k, l, m) meaning b^k (ab)^l a^m.  The product
rule compares the trailing a-power of the left factor with the leading
b-power of the right one; everything else here (powers, translations, the
equation solver, Green witnesses) is built on :func:`mul_c`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Callable, Iterable, Literal, Optional

from .elements import BicyclicNF, CanonC, Cell, Region
from .errors import InvalidElement, ZeroExponent
from .words import from_normal_c, to_normal_c

Side = Literal["left", "right"]

AB = CanonC(0, 1, 0)
A_ = CanonC(0, 0, 1)
B_ = CanonC(1, 0, 0)
IDENTITY_B = BicyclicNF(0, 0)


def mul_c(x: CanonC, y: CanonC) -> CanonC:
    k, l, m = x  # noqa: E741
    n, p, q = y
    if m < n:
        return CanonC(k + n - m, p, q)
    if m > n:
        return CanonC(k, l, q + m - n)
    if m:
        return CanonC(k, l + p + 1, q)
    return CanonC(k, l + p, q)


def mul_b(x: BicyclicNF, y: BicyclicNF) -> BicyclicNF:
    t = min(x.j, y.i)
    return BicyclicNF(x.i + y.i - t, y.j + x.j - t)


def pow_c(x: CanonC, n: int) -> CanonC:
    if n < 1:
        raise ZeroExponent("C has no identity; exponent must be >= 1")
    result: Optional[CanonC] = None
    base = x
    while n:
        if n & 1:
            result = base if result is None else mul_c(result, base)
        n >>= 1
        if n:
            base = mul_c(base, base)
    assert result is not None
    return result


def hom_h(x: CanonC) -> BicyclicNF:
    """b^k (ab)^l a^m  ->  b^k a^m; forgets the (ab)-exponent."""
    return BicyclicNF(x.k, x.m)


def phi(i: int, j: int, x: CanonC) -> CanonC:
    """x -> b^i . x . a^j (the identity map when i = j = 0)."""
    if i < 0 or j < 0:
        raise InvalidElement("phi indices must be nonnegative")
    if i:
        x = mul_c(CanonC(i, 0, 0), x)
    if j:
        x = mul_c(x, CanonC(0, 0, j))
    return x


def enumerate_region(r: Region) -> list[CanonC]:
    return list(r)


def cell_of(x: CanonC) -> Cell:
    return Cell.of(x)


# -- equations ---------------------------------------------------------------


@dataclass(frozen=True)
class EquationShape:
    """One of ``axb``, ``xb``, ``ax``, ``lx`` (c.X) or ``xr`` (X.c)."""

    kind: Literal["axb", "xb", "ax", "lx", "xr"]
    c: Optional[CanonC] = None

    def __post_init__(self) -> None:
        if self.kind not in ("axb", "xb", "ax", "lx", "xr"):
            raise InvalidElement(f"unknown equation shape {self.kind!r}")
        if (self.kind in ("lx", "xr")) != (self.c is not None):
            raise InvalidElement(f"shape {self.kind!r} takes a coefficient iff it is lx/xr")

    @classmethod
    def parse(cls, text: str) -> EquationShape:
        text = text.strip().lower()
        if ":" in text:
            kind, coeff = text.split(":", 1)
            return cls(kind, CanonC.parse(coeff.strip("<> ")))  # type: ignore[arg-type]
        return cls(text)  # type: ignore[arg-type]

    def evaluate(self, x: CanonC) -> CanonC:
        if self.kind == "axb":
            return mul_c(mul_c(A_, x), B_)
        if self.kind == "xb":
            return mul_c(x, B_)
        if self.kind == "ax":
            return mul_c(A_, x)
        if self.kind == "lx":
            return mul_c(self.c, x)  # type: ignore[arg-type]
        return mul_c(x, self.c)  # type: ignore[arg-type]

    def __str__(self) -> str:
        return f"{self.kind}:{self.c}" if self.c is not None else self.kind


def solve_equation(shape: EquationShape, rhs: CanonC, r: Region) -> frozenset[CanonC]:
    """Every X in the region with shape(X) = rhs, by exhaustive search."""
    return frozenset(x for x in r if shape.evaluate(x) == rhs)


# -- translations ------------------------------------------------------------


def apply_translation(side: Side, c: CanonC, x: CanonC) -> CanonC:
    if side == "left":
        return mul_c(c, x)
    if side == "right":
        return mul_c(x, c)
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


def is_fixed(side: Side, c: CanonC, x: CanonC) -> bool:
    return apply_translation(side, c, x) == x


def is_idempotent(x: CanonC) -> bool:
    return mul_c(x, x) == x


# -- Green's relations, bounded search ----------------------------------------


def words_upto(maxlen: int) -> Iterable[str]:
    """Nonempty words over {a, b} in length-lexicographic order (a < b)."""
    for n in range(1, maxlen + 1):
        for letters in product("ab", repeat=n):
            yield "".join(letters)


@dataclass(frozen=True)
class WitnessPair:
    u: str
    v: str


@lru_cache(maxsize=4096)
def _products(x: CanonC, maxlen: int, side: Side) -> tuple[tuple[str, CanonC], ...]:
    word = from_normal_c(x)
    if side == "right":
        return tuple((w, to_normal_c(word + w)) for w in words_upto(maxlen))
    return tuple((w, to_normal_c(w + word)) for w in words_upto(maxlen))


def _first_word(x: CanonC, y: CanonC, maxlen: int, side: Side) -> Optional[str]:
    for w, z in _products(x, maxlen, side):
        if z == y:
            return w
    return None


def green_witness(side: Literal["R", "L"], x: CanonC, y: CanonC, maxlen: int) -> Optional[WitnessPair]:
    """Words u, v with x.u = y and y.v = x (side R) or u.x = y and v.y = x (side L).

    Products are computed by rewriting the concatenated words.  ``None``
    only means nothing was found up to ``maxlen``.
    """
    if maxlen < 1:
        raise ValueError("maxlen must be >= 1")
    where: Side = "right" if side == "R" else "left"
    if side not in ("R", "L"):
        raise ValueError(f"side must be 'R' or 'L', not {side!r}")
    u = _first_word(x, y, maxlen, where)
    if u is None:
        return None
    v = _first_word(y, x, maxlen, where)
    if v is None:
        return None
    return WitnessPair(u, v)


def h_related(x: CanonC, y: CanonC, maxlen: int) -> bool:
    if x == y:
        return True
    return green_witness("R", x, y, maxlen) is not None and green_witness("L", x, y, maxlen) is not None


def default_simple_bound(x: CanonC, y: CanonC) -> int:
    # heuristic: generous enough for every pair tried so far
    return 2 * (sum(x) + sum(y)) + 4


def _word_key(w: str) -> tuple[int, str]:
    return (len(w), w)


def _shortest_right_path(z: CanonC, target: CanonC, limit: int) -> Optional[str]:
    """Length-lex least nonempty v with z.v = target and |v| <= limit (BFS on elements)."""
    if limit < 1:
        return None
    frontier = [(mul_c(z, A_), "a"), (mul_c(z, B_), "b")]
    seen: set[CanonC] = set()
    for depth in range(1, limit + 1):
        nxt = []
        for elem, path in frontier:
            if elem == target:
                return path
            if elem in seen:
                continue
            seen.add(elem)
            if depth < limit:
                nxt.append((mul_c(elem, A_), path + "a"))
                nxt.append((mul_c(elem, B_), path + "b"))
        frontier = nxt
    return None


def simple_witness(x: CanonC, y: CanonC, maxlen: Optional[int] = None) -> Optional[WitnessPair]:
    """Nonempty words u, v of length <= maxlen with u.x.v = y.

    Pairs are ordered by |u| + |v|, then u and v in length-lex order; the
    first one in that order is returned.  ``maxlen`` defaults to
    :func:`default_simple_bound`.
    """
    if maxlen is None:
        maxlen = default_simple_bound(x, y)
    if maxlen < 1:
        raise ValueError("maxlen must be >= 1")
    best: Optional[tuple[int, tuple[int, str], tuple[int, str]]] = None
    seen: set[CanonC] = set()
    for u in words_upto(maxlen):
        # later u sort after the current best at equal total length
        if best is not None and len(u) + 1 >= best[0]:
            break
        z = mul_c(to_normal_c(u), x)
        if z in seen:
            # an earlier u reached the same element with a key no larger
            continue
        seen.add(z)
        limit = maxlen if best is None else min(maxlen, best[0] - len(u) - 1)
        v = _shortest_right_path(z, y, limit)
        if v is None:
            continue
        cand = (len(u) + len(v), _word_key(u), _word_key(v))
        if best is None or cand < best:
            best = cand
    if best is None:
        return None
    return WitnessPair(best[1][1], best[2][1])


def check_witness(u: str, x: CanonC, v: str, y: CanonC) -> bool:
    """Oracle check of u.x.v = y on words."""
    return to_normal_c(u + from_normal_c(x) + v) == y


MulC = Callable[[CanonC, CanonC], CanonC]


# -- specialised product rules ------------------------------------------------
# Each is written out case by case, independently of mul_c, so that the
# formulas-31 suite can compare the two on parameter grids.


def diag_times(m: int, l: int, y: CanonC) -> CanonC:  # noqa: E741
    """b^m (ab)^l a^m . y"""
    n, p, q = y
    if m < n:
        return CanonC(n, p, q)
    if m == n and m:
        return CanonC(n, l + p + 1, q)
    if m == n:
        return CanonC(0, l + p, q)
    return CanonC(m, l, q + m - n)


def times_diag(x: CanonC, n: int, p: int) -> CanonC:
    """x . b^n (ab)^p a^n"""
    i, l, m = x  # noqa: E741
    if m < n:
        return CanonC(i + n - m, p, n)
    if m == n and m:
        return CanonC(i, l + p + 1, n)
    if m == n:
        return CanonC(i, l + p, 0)
    return CanonC(i, l, m)


def sandwich_ab(x: CanonC) -> CanonC:
    """a . x . b, by the nine-way split on the outer exponents of x."""
    n, p, q = x
    if n > 1:
        if q == 0:
            return CanonC(n, 0, 0)
        if q == 1:
            return CanonC(n - 1, p + 1, 0)
        return CanonC(n - 1, p, q - 1)
    if n == 1:
        if q == 0:
            return CanonC(1, 0, 0)
        if q == 1:
            return CanonC(0, p + 2, 0)
        return CanonC(0, p + 1, q - 1)
    if q == 0:
        return CanonC(0, 1, 0)
    if q == 1:
        return CanonC(0, 0, 1)
    return CanonC(0, 0, q)


def times_b(x: CanonC) -> CanonC:
    k, l, m = x  # noqa: E741
    if m == 0:
        return CanonC(k + 1, 0, 0)
    if m == 1:
        return CanonC(k, l + 1, 0)
    return CanonC(k, l, m - 1)


def a_times(x: CanonC) -> CanonC:
    n, p, q = x
    if n > 1:
        return CanonC(n - 1, p, q)
    if n == 1:
        return CanonC(0, p + 1, q)
    return CanonC(0, 0, q + 1)


def b_times(x: CanonC) -> CanonC:
    return CanonC(x.k + 1, x.l, x.m)


def ab_times(x: CanonC) -> CanonC:
    """ab . x: an (ab) in front is absorbed unless x starts with a."""
    n, p, q = x
    if n == 0:
        return CanonC(0, p + 1, q)
    return x
