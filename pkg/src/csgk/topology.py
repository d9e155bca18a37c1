"""Finite truncations of three topologies and checks of their continuity claims.

* ``tau_p`` on C: basic sets U_alpha(x) = {b^k (ab)^(l + lam * p^alpha) a^m},
  and the metric that generates it.
* The topology on ``C ⊔ B(a,b)``: C-points isolated, a B-point <i,j> has
  neighbourhoods {<i,j>} ∪ {b^i (ab)^k a^j : k >= n}.
* The topology on ``C ∪ {0}``: C-points isolated, U_n(0) = {0} ∪ {x : x.k, x.m >= n}.

Basic sets are infinite; checks enumerate them up to a truncation bound but
test membership in a *target* set in closed form, so products that leave the
truncation are still judged correctly.  Every report records its truncation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Literal, Optional

import numpy as np

from .algebra import AB, apply_translation, mul_c
from .elements import BicyclicNF, CanonC, Region
from .errors import InclusionFailure, InvalidElement, MetricFailure
from .extensions import ExtElem, ExtZeroElem, Zero, star_mul, zero_mul
from .report import Report

LAMBDA_NOTE = "basic sets include their centre (lambda >= 0)"
METRIC_NOTE = "metric value for equal outer exponents is 2^-s, s the p-adic valuation of the (ab)-exponent gap"
TRUNCATION_NOTE = "pass holds for the stated truncation only"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def valuation(n: int, p: int) -> int:
    """Largest t with p^t dividing n (n != 0)."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    n = abs(n)
    t = 0
    while n % p == 0:
        n //= p
        t += 1
    return t


@dataclass(frozen=True)
class TauPParams:
    p: int
    alpha: int
    lambda_max: int

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise InvalidElement(f"p must be prime, got {self.p}")
        if self.alpha < 1 or self.lambda_max < 1:
            raise InvalidElement("alpha and lambda_max must be >= 1")

    @property
    def step(self) -> int:
        return self.p**self.alpha

    def as_dict(self) -> dict:
        return {"p": self.p, "alpha": self.alpha, "lambda_max": self.lambda_max}


@dataclass(frozen=True)
class MetricValue:
    """Exactly 0 or 2^-s for an integer s >= 0."""

    kind: Literal["zero", "dyadic"]
    s: int = 0
    key: tuple[int, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.kind not in ("zero", "dyadic") or self.s < 0:
            raise ValueError(f"bad metric value {self.kind}/{self.s}")
        object.__setattr__(self, "key", (0, 0) if self.kind == "zero" else (1, -self.s))

    def __lt__(self, other: MetricValue) -> bool:
        return self.key < other.key

    def __le__(self, other: MetricValue) -> bool:
        return self.key <= other.key

    def __gt__(self, other: MetricValue) -> bool:
        return self.key > other.key

    def __ge__(self, other: MetricValue) -> bool:
        return self.key >= other.key

    def as_fraction(self) -> Fraction:
        return Fraction(0) if self.kind == "zero" else Fraction(1, 2**self.s)

    def __str__(self) -> str:
        return "0" if self.kind == "zero" else f"2^-{self.s}"


ZERO_DISTANCE = MetricValue("zero")
ONE = MetricValue("dyadic", 0)


@lru_cache(maxsize=None)
def dyadic(s: int) -> MetricValue:
    return MetricValue("dyadic", s)


def metric_tau_p(x: CanonC, y: CanonC, p: int) -> MetricValue:
    if x == y:
        return ZERO_DISTANCE
    if x.k == y.k and x.m == y.m:
        return dyadic(valuation(x.l - y.l, p))
    return ONE


def nbhd_tau_p(x: CanonC, params: TauPParams) -> frozenset[CanonC]:
    step = params.step
    return frozenset(CanonC(x.k, x.l + lam * step, x.m) for lam in range(params.lambda_max + 1))


def in_tau_p_nbhd(y: CanonC, centre: CanonC, step: int) -> bool:
    """Closed-form membership in the untruncated U_alpha(centre), step = p^alpha."""
    gap = y.l - centre.l
    return y.k == centre.k and y.m == centre.m and gap >= 0 and gap % step == 0


def tau_p_target(x: CanonC, y: CanonC) -> tuple[str, CanonC]:
    """Which product condition applies to (x, y) and the centre of its target set."""
    k, l, m = x  # noqa: E741
    n, t, q = y
    if m < n:
        return "i", CanonC(k + n - m, t, q)
    if m == n and m:
        return "ii", CanonC(k, l + t + 1, q)
    if m == n:
        return "iii", CanonC(k, l + t, q)
    return "iv", CanonC(k, l, q + m - n)


def _new_tau_report(check: str, params: TauPParams, **extra) -> Report:
    return Report(
        check,
        params={**params.as_dict(), **extra},
        convention_notes=[LAMBDA_NOTE, METRIC_NOTE, TRUNCATION_NOTE],
    )


def check_tau_p_product(x: CanonC, y: CanonC, params: TauPParams, *, raise_on_failure: bool = True) -> Report:
    """U(x) . U(y) lies in the target neighbourhood, over the truncated sets."""
    cond, centre = tau_p_target(x, y)
    report = _new_tau_report("tau-p-product", params, x=x, y=y)
    step = params.step
    for u in nbhd_tau_p(x, params):
        for v in nbhd_tau_p(y, params):
            report.items_tested += 1
            z = mul_c(u, v)
            if not in_tau_p_nbhd(z, centre, step):
                report.fail({"pair": [u, v], "product": z, "target": centre})
    report.details = {"condition": cond, "target": centre}
    if raise_on_failure:
        report.raise_if_failed(InclusionFailure)
    return report


def _mul_c_arrays(k, l, m, n, p, q):  # noqa: E741
    """Vectorised closed-form product over broadcast exponent arrays."""
    lt = m < n
    gt = m > n
    rk = np.where(lt, k + n - m, k)
    rl = np.where(lt, p, np.where(gt, l, l + p + (m != 0)))
    rm = np.where(gt, q + m - n, q)
    return rk, rl, rm


def check_tau_p_grid(r: Region, params: TauPParams, *, raise_on_failure: bool = True) -> Report:
    """All four product conditions for every ordered pair in ``r``.

    Products of every pair of truncated neighbourhood points are formed
    with a vectorised product, one (x, y) pair at a time.
    """
    report = _new_tau_report("tau-p", params, region=str(r))
    step = params.step
    lam = np.arange(params.lambda_max + 1, dtype=np.int32) * np.int32(step)
    left_l = lam[:, None]
    right_l = lam[None, :]
    elems = list(r)
    per_condition = {"i": 0, "ii": 0, "iii": 0, "iv": 0}
    size = lam.size**2
    for x in elems:
        for y in elems:
            cond, centre = tau_p_target(x, y)
            rk, rl, rm = _mul_c_arrays(x.k, x.l + left_l, x.m, y.k, y.l + right_l, y.m)
            gap = rl - centre.l
            good = (rk == centre.k) & (rm == centre.m) & (gap >= 0) & (gap % step == 0)
            per_condition[cond] += 1
            report.items_tested += size
            if not good.all():
                a, b = np.argwhere(~np.broadcast_to(good, (lam.size, lam.size)))[0]
                report.fail(
                    {
                        "pair": [CanonC(x.k, x.l + int(lam[a]), x.m), CanonC(y.k, y.l + int(lam[b]), y.m)],
                        "target": centre,
                        "condition": cond,
                    }
                )
    report.details = {"pairs": len(elems) ** 2, "pairs_per_condition": per_condition}
    if raise_on_failure:
        report.raise_if_failed(InclusionFailure)
    return report


def metric_sample(x: CanonC, params: TauPParams, head: int = 8) -> list[CanonC]:
    """x, the first and last points of its truncated neighbourhood, and points off that grid."""
    step = params.step
    lams = sorted({*range(min(head, params.lambda_max) + 1), params.lambda_max})
    pts = {CanonC(x.k, x.l + lam * step, x.m) for lam in lams}
    pts.add(CanonC(x.k, x.l + 1, x.m))
    if step > params.p:
        pts.add(CanonC(x.k, x.l + step // params.p, x.m))
    for dk, dm in ((1, 0), (-1, 0), (0, 1), (0, -1), (1, 1)):
        k, m = x.k + dk, x.m + dm
        if k >= 0 and m >= 0 and k + x.l + m > 0:
            pts.add(CanonC(k, x.l, m))
    return sorted(pts)


def check_tau_p_metric_base(x: CanonC, params: TauPParams, *, raise_on_failure: bool = True) -> Report:
    """Ball inclusion, its truncated converse, and the metric axioms around x.

    Ball and converse run over the whole truncation; identity, symmetry
    and the ultrametric inequality run on all pairs and triples of
    :func:`metric_sample`.
    """
    report = _new_tau_report("tau-p-metric", params, x=x)
    p, alpha, step = params.p, params.alpha, params.step
    radius = dyadic(alpha)
    nbhd = nbhd_tau_p(x, params)
    sample = metric_sample(x, params)

    def fail(axiom: str, *pts) -> None:
        report.fail({"axiom": axiom, "points": list(pts)})

    report.items_tested += 1
    if len(nbhd) < 2:
        fail("no-isolated-points", x)
    for y in nbhd:
        report.items_tested += 1
        if metric_tau_p(x, y, p) > radius:
            fail("ball", x, y)
    for gap in range(params.lambda_max * step + 1):
        y = CanonC(x.k, x.l + gap, x.m)
        report.items_tested += 1
        if metric_tau_p(x, y, p) <= radius and y not in nbhd:
            fail("converse", x, y)
    dist = {(y, z): metric_tau_p(y, z, p) for y in sample for z in sample}
    for (y, z), d in dist.items():
        report.items_tested += 1
        if (d == ZERO_DISTANCE) != (y == z):
            fail("identity", y, z)
        if d != dist[z, y]:
            fail("symmetry", y, z)
    for y, w, z in product(sample, repeat=3):
        report.items_tested += 1
        if dist[y, z] > max(dist[y, w], dist[w, z]):
            fail("ultrametric", y, w, z)
    report.details = {"sample_size": len(sample), "nbhd_size": len(nbhd)}
    if raise_on_failure:
        report.raise_if_failed(MetricFailure)
    return report


# -- C ⊔ B(a,b) ----------------------------------------------------------------


def nbhd_ext(x: ExtElem, n: int, kcap: int) -> frozenset[ExtElem]:
    if n < 1:
        raise ValueError("neighbourhood index must be >= 1")
    if isinstance(x, CanonC):
        return frozenset({x})
    return frozenset({x, *(CanonC(x.i, k, x.j) for k in range(n, kcap + 1) if x.i or k or x.j)})


def in_ext_nbhd(z: ExtElem, centre: BicyclicNF, n: int) -> bool:
    if isinstance(z, BicyclicNF):
        return z == centre
    return z.k == centre.i and z.m == centre.j and z.l >= n


Case = Literal[1, 2, 3]


@dataclass(frozen=True)
class ExtTarget:
    sub: str
    centre: ExtElem
    exact: bool  # True when the product set must equal {centre}


def ext_target(case: Case, left: ExtElem, right: ExtElem) -> ExtTarget:
    """Sub-statement a)/b)/c) and target set for the three continuity cases."""
    if case == 1:
        i, k = left  # type: ignore[misc]
        m, p = right  # type: ignore[misc]
        if k < m:
            return ExtTarget("a", BicyclicNF(i - k + m, p), False)
        if k == m:
            return ExtTarget("b", BicyclicNF(i, p), False)
        return ExtTarget("c", BicyclicNF(i, k - m + p), False)
    if case == 2:
        i, k = left  # type: ignore[misc]
        m, n, p = right  # type: ignore[misc]
        if k < m:
            return ExtTarget("a", CanonC(i - k + m, n, p), True)
        if k == m:
            return ExtTarget("b", BicyclicNF(i, p), False)
        return ExtTarget("c", BicyclicNF(i, k - m + p), False)
    if case == 3:
        i, l, k = left  # type: ignore[misc]  # noqa: E741
        m, p = right  # type: ignore[misc]
        if k < m:
            # the product is a B-point plus its C-tail, so the target is U_u, not a singleton
            return ExtTarget("a", BicyclicNF(i - k + m, p), False)
        if k == m:
            return ExtTarget("b", BicyclicNF(i, p), False)
        return ExtTarget("c", CanonC(i, l, k - m + p), True)
    raise ValueError(f"case must be 1, 2 or 3, not {case!r}")


def _ext_operands(case: Case, params: tuple[int, ...]) -> tuple[ExtElem, ExtElem]:
    if case == 1:
        i, k, m, p = params
        return BicyclicNF(i, k), BicyclicNF(m, p)
    if case == 2:
        i, k, m, n, p = params
        return BicyclicNF(i, k), CanonC(m, n, p)
    if case == 3:
        i, l, k, m, p = params  # noqa: E741
        return CanonC(i, l, k), BicyclicNF(m, p)
    raise ValueError(f"case must be 1, 2 or 3, not {case!r}")


def check_ext_continuity(
    case: Case, params: tuple[int, ...], u: int, kcap: int, *, raise_on_failure: bool = True
) -> Report:
    """Continuity of ★ at a pair involving a B-point.

    ``params`` is (i, k, m, p) for case 1 (<i,k> ★ <m,p>), (i, k, m, n, p)
    for case 2 (<i,k> ★ b^m(ab)^n a^p) and (i, l, k, m, p) for case 3
    (b^i(ab)^l a^k ★ <m,p>).
    """
    left, right = _ext_operands(case, params)
    target = ext_target(case, left, right)
    report = Report(
        "ext-topology",
        params={"case": case, "left": left, "right": right, "u": u, "kcap": kcap},
        convention_notes=[TRUNCATION_NOTE],
    )
    products = set()
    for x in nbhd_ext(left, u, kcap):
        for y in nbhd_ext(right, u, kcap):
            report.items_tested += 1
            z = star_mul(x, y)
            products.add(z)
            if target.exact:
                ok = z == target.centre
            else:
                ok = in_ext_nbhd(z, target.centre, u)  # type: ignore[arg-type]
            if not ok:
                report.fail({"pair": [x, y], "product": z, "target": target.centre})
    report.details = {"sub_case": target.sub, "target": target.centre, "exact": target.exact}
    if target.exact:
        report.details["product_set"] = sorted(products, key=str)
    if raise_on_failure:
        report.raise_if_failed(InclusionFailure)
    return report


# -- C ∪ {0} -------------------------------------------------------------------


def nbhd_zero(n: int, r: Region) -> frozenset[ExtZeroElem]:
    if n < 1:
        raise ValueError("neighbourhood index must be >= 1")
    return frozenset({Zero, *(x for x in r if x.k >= n and x.m >= n)})


def in_zero_nbhd(z: ExtZeroElem, n: int) -> bool:
    return z is Zero or (z.k >= n and z.m >= n)  # type: ignore[union-attr]


def check_zero_continuity(
    m: Optional[int],
    nn: Optional[int],
    pp: Optional[int],
    i: int,
    r: Region,
    *,
    conditions: tuple[str, ...] = ("i", "ii", "iii"),
    raise_on_failure: bool = True,
) -> Report:
    """U_i·U_i ⊆ U_i, U_{i+m}·{x} ⊆ U_i and {x}·U_{i+p} ⊆ U_i for x = b^m(ab)^nn a^pp.

    Pass ``m = nn = pp = None`` to check only the first inclusion.
    """
    if i < 1:
        raise ValueError("i must be >= 1")
    x = None if m is None else CanonC(m, nn, pp)  # type: ignore[arg-type]
    report = Report(
        "zero-topology",
        params={"i": i, "x": x, "region": str(r)},
        convention_notes=[TRUNCATION_NOTE],
    )
    counts = {}

    def run(name: str, lefts, rights) -> None:
        before = report.items_tested
        for a in lefts:
            for b in rights:
                report.items_tested += 1
                z = zero_mul(a, b)
                if not in_zero_nbhd(z, i):
                    report.fail({"condition": name, "pair": [a, b], "product": z})
        counts[name] = report.items_tested - before

    if "i" in conditions:
        base = nbhd_zero(i, r)
        run("i", base, base)
    if x is not None and "ii" in conditions:
        run("ii", nbhd_zero(i + x.k, r), [x])
    if x is not None and "iii" in conditions:
        run("iii", [x], nbhd_zero(i + x.m, r))
    report.details = {"pairs_per_condition": counts}
    if raise_on_failure:
        report.raise_if_failed(InclusionFailure)
    return report


# -- fixed points of translations ------------------------------------------------


def check_fix_inclusions(n: int, r: Region, *, raise_on_failure: bool = True) -> Report:
    """The four fixed-point families for translations by ab and b^n a^n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    diag = CanonC(n, 0, n)
    families = [
        ("right-ab", "right", AB, lambda x: x.m >= 1),
        ("left-ab", "left", AB, lambda x: x.k >= 1),
        ("right-bnan", "right", diag, lambda x: x.m >= n + 1),
        ("left-bnan", "left", diag, lambda x: x.k >= n + 1),
    ]
    report = Report("fix-sets", params={"n": n, "region": str(r)}, convention_notes=[TRUNCATION_NOTE])
    sizes = {}
    for name, side, c, member in families:
        members = [x for x in r if member(x)]
        sizes[name] = len(members)
        for x in members:
            report.items_tested += 1
            if apply_translation(side, c, x) != x:  # type: ignore[arg-type]
                report.fail({"family": name, "element": x})
    report.details = {"families": len(families), "family_sizes": sizes}
    if raise_on_failure:
        report.raise_if_failed(InclusionFailure)
    return report


def check_translation_retract(k: int, l: int, r: Region, *, raise_on_failure: bool = True) -> Report:  # noqa: E741
    """Image and fixed-point facts for translations by c = b^k (ab)^l a^k.

    Idempotence of the translations is measured, not asserted: it fails
    wherever the first (resp. last) exponent equals k.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    c = CanonC(k, l, k)
    report = Report(
        "retract-behavior",
        params={"k": k, "l": l, "region": str(r)},
        convention_notes=[TRUNCATION_NOTE, "idempotence exceptions are recorded, not asserted"],
    )
    exceptions: dict[str, list[tuple[CanonC, CanonC]]] = {"left": [], "right": []}
    for x in r:
        lx = mul_c(c, x)
        rx = mul_c(x, c)
        report.items_tested += 4
        if lx.k < k:
            report.fail({"claim": "image(left) in R_k", "element": x, "image": lx})
        if rx.m < k:
            report.fail({"claim": "image(right) in L_k", "element": x, "image": rx})
        if x.k >= k + 1 and lx != x:
            report.fail({"claim": "Fix(left) contains x.k >= k+1", "element": x})
        if x.m >= k + 1 and rx != x:
            report.fail({"claim": "Fix(right) contains x.m >= k+1", "element": x})
        if mul_c(c, lx) != lx:
            exceptions["left"].append((x, lx))
        if mul_c(rx, c) != rx:
            exceptions["right"].append((x, rx))
    report.details = {
        "idempotence_exceptions": {side: len(xs) for side, xs in exceptions.items()},
        # exponent of the image on the translated side; expected to be exactly k
        "left_exception_image_exponents": sorted({img.k for _, img in exceptions["left"]}),
        "right_exception_image_exponents": sorted({img.m for _, img in exceptions["right"]}),
        "exception_samples": {side: [x for x, _ in xs[:5]] for side, xs in exceptions.items()},
    }
    if raise_on_failure:
        report.raise_if_failed(InclusionFailure)
    return report
