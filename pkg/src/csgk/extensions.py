"""Two explicit extensions of C.

* ``S = C ⊔ B(a,b)`` with the mixed product ``star_mul``.  Elements are
  :class:`CanonC` (the C-part) or :class:`BicyclicNF` (the B-part); the type
  is the tag.
* ``S0 = C ∪ {0}`` with an absorbing zero, :data:`Zero`.
"""

from __future__ import annotations

from itertools import product
from typing import Callable, Iterable, Union

from .algebra import hom_h, mul_b, mul_c
from .elements import BicyclicNF, CanonC, Region
from .errors import AssociativityFailure, HomomorphismFailure, InvalidElement
from .report import Report


class _ZeroType:
    __slots__ = ()
    _instance = None

    def __new__(cls) -> _ZeroType:
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Zero"

    def __str__(self) -> str:
        return "0"

    def __reduce__(self):
        return (_ZeroType, ())


Zero = _ZeroType()

ExtElem = Union[CanonC, BicyclicNF]
ExtZeroElem = Union[CanonC, _ZeroType]


def parse_ext(text: str) -> ExtElem:
    tag, _, body = text.strip().partition(":")
    if tag.upper() == "C":
        return CanonC.parse(body)
    if tag.upper() == "B":
        return BicyclicNF.parse(body)
    raise InvalidElement(f"expected 'C:k,l,m' or 'B:i,j', got {text!r}")


def parse_ext_zero(text: str) -> ExtZeroElem:
    if text.strip() == "0":
        return Zero
    x = parse_ext(text)
    if not isinstance(x, CanonC):
        raise InvalidElement(f"S0 has no B-part elements: {text!r}")
    return x


def format_ext(x: ExtElem | ExtZeroElem) -> str:
    if isinstance(x, CanonC):
        return f"C:{x}"
    if isinstance(x, BicyclicNF):
        return f"B:{x}"
    return "0"


def tag(x: ExtElem) -> str:
    return "C" if isinstance(x, CanonC) else "B"


def _cmp(m: int, n: int) -> str:
    return "<" if m < n else ">" if m > n else "="


def star_branch(x: ExtElem, y: ExtElem) -> str:
    """Name the case of the product formula that x ★ y falls into."""
    if isinstance(x, CanonC):
        m = x.m
        if isinstance(y, CanonC):
            if m == y.k:
                return "CC:=0" if m == 0 else "CC:=+"
            return "CC:" + _cmp(m, y.k)
        return "CB:" + _cmp(m, y.i)
    if isinstance(y, CanonC):
        return "BC:" + _cmp(x.j, y.k)
    return "BB:" + _cmp(x.j, y.i)


MIXED_BRANCHES = ("CB:<", "CB:=", "CB:>", "BC:<", "BC:=", "BC:>")


def star_mul(x: ExtElem, y: ExtElem) -> ExtElem:
    if isinstance(x, CanonC):
        if isinstance(y, CanonC):
            return mul_c(x, y)
        k, l, m = x  # noqa: E741
        n, q = y
        if m < n:
            return BicyclicNF(k + n - m, q)
        if m == n:
            return BicyclicNF(k, q)
        return CanonC(k, l, q + m - n)
    if isinstance(y, CanonC):
        k, m = x
        n, p, q = y
        if m < n:
            return CanonC(k + n - m, p, q)
        if m == n:
            return BicyclicNF(k, q)
        return BicyclicNF(k, q + m - n)
    return mul_b(x, y)


def zero_mul(x: ExtZeroElem, y: ExtZeroElem) -> ExtZeroElem:
    if x is Zero or y is Zero:
        return Zero
    return mul_c(x, y)  # type: ignore[arg-type]


def ext_carrier(r: Region, bcap: int) -> list[ExtElem]:
    elems: list[ExtElem] = list(r)
    elems.extend(BicyclicNF(i, j) for i in range(bcap + 1) for j in range(bcap + 1))
    return elems


def check_star_associativity(
    r: Region,
    bcap: int,
    *,
    mul: Callable[[ExtElem, ExtElem], ExtElem] = star_mul,
    raise_on_failure: bool = True,
) -> Report:
    """All triples over C-parts in ``r`` and B-parts <i,j> with i, j <= bcap."""
    elems = ext_carrier(r, bcap)
    report = Report(
        "assoc-star",
        params={"region": str(r), "bcap": bcap},
        convention_notes=["B:0,0 (the bicyclic identity) is part of the carrier"],
    )
    tags_seen: set[str] = set()
    branches_seen: set[str] = set()
    cases: set[tuple[str, ...]] = set()
    table = {(x, y): mul(x, y) for x in elems for y in elems}
    for x, y, z in product(elems, repeat=3):
        xy = table[x, y]
        yz = table[y, z]
        left = table.get((xy, z)) or mul(xy, z)
        right = table.get((x, yz)) or mul(x, yz)
        report.items_tested += 1
        combo = tag(x) + tag(y) + tag(z)
        b1, b2 = star_branch(x, y), star_branch(xy, z)
        b3, b4 = star_branch(y, z), star_branch(x, yz)
        tags_seen.add(combo)
        branches_seen.update((b1, b2, b3, b4))
        cases.add((combo, b1, b2, b3, b4))
        if left != right:
            report.fail({"triple": [x, y, z], "left": left, "right": right})
    missing = sorted(set(MIXED_BRANCHES) - branches_seen)
    missing_tags = sorted({"".join(t) for t in product("CB", repeat=3)} - tags_seen)
    report.details = {
        "carrier_size": len(elems),
        "tag_combinations": len(tags_seen),
        "branches_hit": sorted(branches_seen),
        "case_count": len(cases),
        "full_coverage": not missing and not missing_tags,
    }
    if missing or missing_tags:
        report.warnings.append(f"branch coverage incomplete: branches {missing}, tag combos {missing_tags}")
    if raise_on_failure:
        report.raise_if_failed(AssociativityFailure)
    return report


def ext_hom(x: ExtElem) -> BicyclicNF:
    """Extension of h to S: identity on the B-part."""
    return hom_h(x) if isinstance(x, CanonC) else x


def check_pi_homomorphism(
    r: Region,
    *,
    hom: Callable[[CanonC], BicyclicNF] = hom_h,
    raise_on_failure: bool = True,
) -> Report:
    """h(xy) = h(x)h(y) on C, plus h(x ★ h(y)) = h(xy) = h(h(x) ★ y) across the parts."""
    report = Report("pi-hom", params={"region": str(r)})
    elems = list(r)
    mixed = 0
    for x in elems:
        hx = hom(x)
        for y in elems:
            xy = mul_c(x, y)
            hy = hom(y)
            target = hom(xy)
            report.items_tested += 1
            if target != mul_b(hx, hy):
                report.fail({"pair": [x, y], "h(xy)": target, "h(x)h(y)": mul_b(hx, hy)})
                continue
            for z in (star_mul(x, hy), star_mul(hx, y)):
                mixed += 1
                lifted = hom(z) if isinstance(z, CanonC) else z
                if lifted != target:
                    report.fail({"pair": [x, y], "mixed": z, "h(xy)": target})
    report.details = {"mixed_identities": mixed}
    if raise_on_failure:
        report.raise_if_failed(HomomorphismFailure)
    return report


def check_zero_associativity(r: Region, *, raise_on_failure: bool = True) -> Report:
    elems: list[ExtZeroElem] = [Zero, *r]
    report = Report("assoc-zero", params={"region": str(r)})
    for x, y, z in product(elems, repeat=3):
        report.items_tested += 1
        if zero_mul(zero_mul(x, y), z) != zero_mul(x, zero_mul(y, z)):
            report.fail({"triple": [x, y, z]})
    for x in elems:
        report.items_tested += 1
        if zero_mul(Zero, x) is not Zero or zero_mul(x, Zero) is not Zero:
            report.fail({"not_absorbing": x})
    if raise_on_failure:
        report.raise_if_failed(AssociativityFailure)
    return report


def restricted_products_agree(r: Region, bcap: int) -> Iterable[tuple]:
    """Pairs where ★ disagrees with mul_c on C-parts or mul_b on B-parts."""
    cs = list(r)
    bs = [BicyclicNF(i, j) for i in range(bcap + 1) for j in range(bcap + 1)]
    for x, y in product(cs, repeat=2):
        if star_mul(x, y) != mul_c(x, y):
            yield (x, y)
    for x, y in product(bs, repeat=2):
        if star_mul(x, y) != mul_b(x, y):
            yield (x, y)
