"""Named check suites.

Each suite is a function ``RunConfig -> Report`` that runs one family of
exhaustive checks on a finite truncation.  The registry :data:`SUITES`
maps suite names to runners.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from itertools import product
from typing import Callable

from . import __version__
from .algebra import (
    A_,
    AB,
    B_,
    a_times,
    ab_times,
    b_times,
    check_witness,
    default_simple_bound,
    diag_times,
    EquationShape,
    green_witness,
    h_related,
    hom_h,
    is_idempotent,
    mul_b,
    mul_c,
    phi,
    pow_c,
    sandwich_ab,
    simple_witness,
    solve_equation,
    times_b,
    times_diag,
)
from .config import RunConfig
from .elements import BicyclicNF, CanonC, Cell, Region
from .errors import ConfigError
from .extensions import check_pi_homomorphism, check_star_associativity, check_zero_associativity, restricted_products_agree
from .report import Report
from .topology import (
    TauPParams,
    check_ext_continuity,
    check_fix_inclusions,
    check_tau_p_grid,
    check_tau_p_metric_base,
    check_translation_retract,
    check_zero_continuity,
    nbhd_tau_p,
)
from .words import (
    C_SYSTEM,
    critical_pairs_check,
    from_normal_c,
    is_irreducible,
    match_normal_c,
    oracle_mul_c,
    rewrite,
    rewrite_trace,
    to_normal_c,
)

Runner = Callable[[RunConfig], Report]
SUITES: dict[str, Runner] = {}


def suite(name: str):
    def register(fn: Runner) -> Runner:
        SUITES[name] = fn
        return fn

    return register


def _vacuous_note(report: Report, r: Region) -> None:
    if len(r) == 0:
        report.warnings.append("vacuous: empty region")


@suite("eq21-oracle")
def eq21_oracle(cfg: RunConfig) -> Report:
    r = cfg.region_or(Region.cube(4))
    report = Report("eq21-oracle", params={"region": str(r)})
    elems = list(r)
    for x in elems:
        wx = from_normal_c(x)
        for y in elems:
            report.items_tested += 1
            got = mul_c(x, y)
            want = to_normal_c(wx + from_normal_c(y))
            if got != want:
                report.fail({"pair": [x, y], "closed_form": got, "oracle": want})
    _vacuous_note(report, r)
    return report


@suite("assoc-c")
def assoc_c(cfg: RunConfig) -> Report:
    r = cfg.region_or(Region.cube(4))
    report = Report("assoc-c", params={"region": str(r)})
    elems = list(r)
    table = {(x, y): mul_c(x, y) for x in elems for y in elems}
    for (x, y), xy in table.items():
        for z in elems:
            report.items_tested += 1
            yz = table[y, z]
            if mul_c(xy, z) != mul_c(x, yz):
                report.fail({"triple": [x, y, z]})
    _vacuous_note(report, r)
    return report


@suite("formulas-31")
def formulas_31(cfg: RunConfig) -> Report:
    """The specialised product rules agree with mul_c, all parameters <= 5."""
    report = Report("formulas-31", params={"parameter_cap": 5})
    grid = range(6)
    counts = dict.fromkeys(["diag_times", "times_diag", "sandwich_ab", "times_b", "a_times", "b_times", "ab_times"], 0)

    def check(name: str, got: CanonC, want: CanonC, *args) -> None:
        counts[name] += 1
        report.items_tested += 1
        if got != want:
            report.fail({"formula": name, "args": list(args), "formula_value": got, "mul_c": want})

    region5 = list(Region.cube(5))
    for m, l in product(grid, grid):  # noqa: E741
        if m == 0 and l == 0:
            continue
        c = CanonC(m, l, m)
        for y in region5:
            check("diag_times", diag_times(m, l, y), mul_c(c, y), m, l, y)
            check("times_diag", times_diag(y, m, l), mul_c(y, c), y, m, l)
    for x in region5:
        check("sandwich_ab", sandwich_ab(x), mul_c(mul_c(A_, x), B_), x)
        check("times_b", times_b(x), mul_c(x, B_), x)
        check("a_times", a_times(x), mul_c(A_, x), x)
        check("b_times", b_times(x), mul_c(B_, x), x)
        check("ab_times", ab_times(x), mul_c(AB, x), x)
    report.details = {"per_formula": counts}
    return report


@suite("hom")
def hom(cfg: RunConfig) -> Report:
    r = cfg.region_or(Region.cube(4))
    report = Report("hom", params={"region": str(r)})
    elems = list(r)
    for x, y in product(elems, repeat=2):
        report.items_tested += 1
        if hom_h(mul_c(x, y)) != mul_b(hom_h(x), hom_h(y)):
            report.fail({"pair": [x, y]})
    # the cells are the fibres of h and partition the region
    cells = {}
    for x in elems:
        report.items_tested += 1
        owners = [c for c in (Cell(x.k, x.m), Cell(x.k, x.m + 1), Cell(x.k + 1, x.m)) if x in c]
        if owners != [Cell(x.k, x.m)] or BicyclicNF(x.k, x.m) != hom_h(x):
            report.fail({"cell": x})
        cells.setdefault(Cell.of(x), set()).add(x)
    covered = sum(len(v) for v in cells.values())
    for cell, members in cells.items():
        report.items_tested += 1
        if cell.within(r) != frozenset(members):
            report.fail({"cell_mismatch": [cell.i, cell.j]})
    if covered != len(elems):
        report.fail({"partition_size": covered})
    report.details = {"cells": len(cells)}
    _vacuous_note(report, r)
    return report


@suite("assoc-star")
def assoc_star(cfg: RunConfig) -> Report:
    r = cfg.region_or(Region.cube(3))
    report = check_star_associativity(r, cfg.bcap, raise_on_failure=False)
    bad = list(restricted_products_agree(r, cfg.bcap))
    report.items_tested += 1
    if bad:
        report.fail({"restriction_mismatch": bad[:5]})
    zero = check_zero_associativity(r, raise_on_failure=False)
    report.absorb(zero)
    report.details["zero_extension_items"] = zero.items_tested
    if not report.details.get("full_coverage"):
        report.fail({"coverage": "incomplete branch coverage"})
    return report


@suite("pi-hom")
def pi_hom(cfg: RunConfig) -> Report:
    return check_pi_homomorphism(cfg.region_or(Region.cube(4)), raise_on_failure=False)


PRIMARY_SHIFT = {
    "id": "xb-ax-index-shift",
    "stated": "X.b = (ab)^(p+2) has unique solution (ab)^p a; a.X = (ab)^(p+2) has unique solution b(ab)^p",
    "computed": "X.b = (ab)^(p+2) has unique solution (ab)^(p+1) a; a.X = (ab)^(p+2) has unique solution b(ab)^(p+1); "
    "equivalently (ab)^p a and b(ab)^p solve the equations with right side (ab)^(p+1)",
}
SANDWICH_SHIFT = {
    "id": "axb-diagonal-shift",
    "stated": "a.X.b = b^n (ab)^p a^n (n > 1) has unique solution b^(n-1) (ab)^p a^(n-1)",
    "computed": "a.X.b = b^n (ab)^p a^n (n >= 1) has unique solution b^(n+1) (ab)^p a^(n+1)",
}


@suite("solve-claims")
def solve_claims(cfg: RunConfig) -> Report:
    """Solution sets of the one-variable equations used to separate the cells.

    Each claim is checked on the region and again on the region grown by 2
    so a unique solution is not an artefact of the boundary.
    """
    r = cfg.region_or(Region.cube(4))
    big = r.grow(2)
    report = Report("solve-claims", params={"region": str(r), "guard_region": str(big)})
    results = []

    def claim(name: str, shape: str, rhs: CanonC, expected_of) -> frozenset:
        sh = EquationShape.parse(shape)
        for region in (r, big):
            got = solve_equation(sh, rhs, region)
            want = expected_of(region)
            report.items_tested += 1
            if got != want:
                report.fail({"claim": name, "shape": shape, "rhs": rhs, "region": str(region), "got": got, "want": want})
        results.append({"claim": name, "shape": shape, "rhs": str(rhs)})
        return got

    def only(x: CanonC):
        return lambda region: frozenset({x}) if x in region else frozenset()

    claim("axb-ab", "axb", AB, lambda region: Cell(0, 0).within(region))
    for p in range(r.L + 1):
        claim("axb-ab^(p+2)", "axb", CanonC(0, p + 2, 0), only(CanonC(1, p, 1)))
        claim("xb-ab^(p+1)", "xb", CanonC(0, p + 1, 0), only(CanonC(0, p, 1)))
        claim("ax-ab^(p+1)", "ax", CanonC(0, p + 1, 0), only(CanonC(1, p, 0)))
    for n in range(1, min(r.K, r.M)):
        for p in range(r.L + 1):
            claim("axb-diagonal", "axb", CanonC(n, p, n), only(CanonC(n + 1, p, n + 1)))
    for l in range(2, r.L + 1):  # noqa: E741
        for m in range(2, r.M + 1):
            claim("xb-ab^l.a^(m-1)", "xb", CanonC(0, l, m - 1), only(CanonC(0, l, m)))
    for n in range(2, r.K + 1):
        for p in range(2, r.L + 1):
            claim("ax-b^(n-1).ab^p", "ax", CanonC(n - 1, p, 0), only(CanonC(n, p, 0)))
    for k in range(1, r.K + 1):
        for p in range(r.L):
            claim("xb-b^k.ab^(p+1)", "xb", CanonC(k, p + 1, 0), only(CanonC(k, p, 1)))
        for p in range(r.L + 1):
            for l in range(1, r.M):  # noqa: E741
                claim("xb-b^k.ab^p.a^l", "xb", CanonC(k, p, l), only(CanonC(k, p, l + 1)))

    # the printed solutions, checked against the solver rather than assumed
    shifted = False
    for p in range(r.L - 1):
        rhs = CanonC(0, p + 2, 0)
        for shape, printed in (("xb", CanonC(0, p, 1)), ("ax", CanonC(1, p, 0))):
            report.items_tested += 1
            if solve_equation(EquationShape.parse(shape), rhs, big) != frozenset({printed}):
                shifted = True
    diagonal = False
    for n in range(2, min(r.K, r.M)):
        for p in range(r.L + 1):
            printed = CanonC(n - 1, p, n - 1)
            report.items_tested += 1
            if solve_equation(EquationShape.parse("axb"), CanonC(n, p, n), big) != frozenset({printed}):
                diagonal = True
    if shifted:
        report.discrepancies.append(PRIMARY_SHIFT)
    if diagonal:
        report.discrepancies.append(SANDWICH_SHIFT)
    report.details = {"claims": len(results)}
    return report


@suite("green")
def green(cfg: RunConfig) -> Report:
    report = Report(
        "green",
        params={"maxlen": cfg.maxlen, "region": str(cfg.region_or(Region.cube(2)))},
        convention_notes=["bounded search: absence of a witness proves nothing"],
    )
    r_pair = green_witness("R", A_, CanonC(0, 0, 2), 2)
    l_pair = green_witness("L", B_, CanonC(2, 0, 0), 2)
    report.items_tested += 2
    if r_pair is None:
        report.fail({"missing": "a R a^2"})
    if l_pair is None:
        report.fail({"missing": "b L b^2"})
    r = cfg.region_or(Region.cube(2))
    elems = list(r)
    h_pairs = []
    for x, y in product(elems, repeat=2):
        if x == y:
            continue
        report.items_tested += 1
        if h_related(x, y, cfg.maxlen):
            h_pairs.append((x, y))
            report.fail({"h_related": [x, y]})
    longest = 0
    for x, y in product(elems, repeat=2):
        report.items_tested += 1
        w = simple_witness(x, y)
        if w is None or not check_witness(w.u, x, w.v, y):
            report.fail({"no_simple_witness": [x, y], "bound": default_simple_bound(x, y)})
        else:
            longest = max(longest, len(w.u) + len(w.v))
    report.details = {
        "a_R_a2": None if r_pair is None else [r_pair.u, r_pair.v],
        "b_L_b2": None if l_pair is None else [l_pair.u, l_pair.v],
        "nontrivial_h_pairs": len(h_pairs),
        "longest_simple_witness": longest,
    }
    _vacuous_note(report, r)
    return report


@suite("injectivity")
def injectivity(cfg: RunConfig) -> Report:
    r = cfg.region_or(Region.cube(4))
    elems = list(r)
    report = Report("injectivity", params={"region": str(r), "phi_max": 3, "power_max": 50})
    for i, j in product(range(4), repeat=2):
        report.items_tested += 1
        images = {phi(i, j, x) for x in elems}
        if len(images) != len(elems):
            report.fail({"phi": [i, j]})
    powers = []
    for g in (AB, B_, A_):
        powers.extend(pow_c(g, n) for n in range(1, 51))
    report.items_tested += 1
    if len(set(powers)) != len(powers):
        report.fail({"cyclic": "repeated power"})
    expected = [CanonC(0, n, 0) for n in range(1, 51)] + [CanonC(n, 0, 0) for n in range(1, 51)] + [CanonC(0, 0, n) for n in range(1, 51)]
    if powers != expected:
        report.fail({"cyclic": "unexpected power"})
    return report


@suite("idempotent-free")
def idempotent_free(cfg: RunConfig) -> Report:
    r = cfg.region_or(Region.cube(6))
    report = Report("idempotent-free", params={"region": str(r)})
    for x in r:
        report.items_tested += 1
        if is_idempotent(x):
            report.fail({"idempotent": x})
    _vacuous_note(report, r)
    return report


@suite("stability")
def stability(cfg: RunConfig) -> Report:
    r = cfg.region_or(Region.cube(4))
    search, absent = r.grow(2), r.grow(4)
    report = Report("stability", params={"region": str(r), "witness_region": str(search), "absence_region": str(absent)})
    ab_c = {mul_c(AB, z) for z in search}
    for y in r:
        report.items_tested += 1
        if mul_c(B_, y) not in ab_c:
            report.fail({"b.y not in ab.C": y})
    report.items_tested += 1
    if mul_c(AB, B_) != B_:
        report.fail({"b = ab.b": mul_c(AB, B_)})
    hits = [z for z in absent if mul_c(B_, z) == B_]
    report.items_tested += len(absent)
    if hits:
        report.fail({"b in b.C": hits[:5]})
    report.details = {"b_equals_ab_times_b": mul_c(AB, B_) == B_, "b_times_z_equals_b": len(hits)}
    return report


@suite("telescope")
def telescope(cfg: RunConfig) -> Report:
    report = Report("telescope", params={"n_max": 20})
    for n in range(1, 21):
        report.items_tested += 1
        if mul_c(CanonC(0, 0, n), CanonC(n, 0, 0)) != AB:
            report.fail({"n": n})
        if oracle_mul_c(CanonC(0, 0, n), CanonC(n, 0, 0)) != AB:
            report.fail({"n": n, "route": "oracle"})
    return report


def tau_params(cfg: RunConfig) -> list[TauPParams]:
    return [TauPParams(p, a, cfg.lambda_factor * p**a) for p in cfg.primes for a in range(cfg.alpha_min, cfg.alpha_max + 1)]


@suite("tau-p")
def tau_p(cfg: RunConfig) -> Report:
    r = cfg.region_or(Region.cube(3))
    report = Report("tau-p", params={
            "region": str(r),
            "primes": list(cfg.primes),
            "alpha": [cfg.alpha_min, cfg.alpha_max],
            "lambda_factor": cfg.lambda_factor,
        })
    smallest = 0
    for params in tau_params(cfg):
        report.absorb(check_tau_p_grid(r, params, raise_on_failure=False))
        for x in r:
            report.absorb(check_tau_p_metric_base(x, params, raise_on_failure=False))
            size = len(nbhd_tau_p(x, params))
            smallest = size if not smallest else min(smallest, size)
    report.details = {"parameter_sets": len(tau_params(cfg)), "smallest_basic_set": smallest}
    _vacuous_note(report, r)
    return report


@suite("ext-topology")
def ext_topology(cfg: RunConfig) -> Report:
    report = Report("ext-topology", params={"exponent_max": 3, "u_max": 3, "kcap": "u+6"})
    subs: dict[str, int] = {}
    e = range(4)
    for u in range(1, 4):
        kcap = u + 6
        runs = [(1, t) for t in product(e, repeat=4)]
        runs += [(2, (i, k, *c)) for i, k in product(e, repeat=2) for c in Region.cube(3)]
        runs += [(3, (*c, m, p)) for c in Region.cube(3) for m, p in product(e, repeat=2)]
        for case, params in runs:
            sub = check_ext_continuity(case, params, u, kcap, raise_on_failure=False)
            report.absorb(sub)
            key = f"{case}{sub.details['sub_case']}"
            subs[key] = subs.get(key, 0) + 1
    report.details = {"sub_statements": dict(sorted(subs.items()))}
    if len(subs) != 9:
        report.fail({"coverage": sorted(subs)})
    return report


@suite("zero-topology")
def zero_topology(cfg: RunConfig) -> Report:
    r = cfg.region_or(Region(7, 3, 7))
    report = Report("zero-topology", params={"region": str(r), "i_max": 3, "exponent_max": 3})
    for i in range(1, 4):
        report.absorb(check_zero_continuity(None, None, None, i, r, raise_on_failure=False))
        for x in Region.cube(3):
            sub = check_zero_continuity(x.k, x.l, x.m, i, r, conditions=("ii", "iii"), raise_on_failure=False)
            report.absorb(sub)
    return report


@suite("fix-sets")
def fix_sets(cfg: RunConfig) -> Report:
    r = cfg.region_or(Region(5, 3, 5))
    report = Report("fix-sets", params={"region": str(r), "n_max": 3})
    for n in range(1, 4):
        report.absorb(check_fix_inclusions(n, r, raise_on_failure=False))
    return report


@suite("retract-behavior")
def retract_behavior(cfg: RunConfig) -> Report:
    r = cfg.region_or(Region(5, 3, 5))
    report = Report("retract-behavior", params={"region": str(r), "k_max": 3, "l_max": 2})
    exceptions = {}
    for k in range(1, 4):
        for l in range(3):  # noqa: E741
            sub = check_translation_retract(k, l, r, raise_on_failure=False)
            report.absorb(sub)
            d = sub.details
            exceptions[f"{k},{l}"] = {
                "count": d["idempotence_exceptions"],
                "left_image_exponents": d["left_exception_image_exponents"],
                "right_image_exponents": d["right_exception_image_exponents"],
            }
    report.details = {"idempotence_exceptions": exceptions}
    report.convention_notes.append("idempotence exceptions are recorded, not asserted")
    return report


def all_words(maxlen: int):
    for n in range(1, maxlen + 1):
        for letters in product("ab", repeat=n):
            yield "".join(letters)


@suite("confluence")
def confluence(cfg: RunConfig) -> Report:
    """Critical pairs, strategy independence, termination and normal-form shape."""
    report = Report("confluence", params={"exhaustive_length": 12, "random_words": cfg.random_words, "random_length": 40, "seed": cfg.seed})
    cp = critical_pairs_check(C_SYSTEM, raise_on_failure=False)
    report.items_tested += 1
    if not cp.ok or [s.word for s in cp.superpositions] != ["aabb"] or cp.superpositions[0].via_left != "ab":
        report.fail({"critical_pairs": cp.to_dict()})
    irreducible = 0
    for w in all_words(12):
        report.items_tested += 1
        ref = rewrite(w, C_SYSTEM, "stack")
        if rewrite(w, C_SYSTEM, "leftmost") != ref or rewrite(w, C_SYSTEM, "rightmost") != ref:
            report.fail({"strategy_dependent": w})
        trace = rewrite_trace(w, C_SYSTEM)
        if any(len(a) - len(b) != 2 for a, b in zip(trace, trace[1:])) or len(trace) - 1 > len(w) // 2:
            report.fail({"termination": w})
        if is_irreducible(w):
            irreducible += 1
            try:
                x = match_normal_c(w)
            except Exception:
                report.fail({"shape": w})
            else:
                if from_normal_c(x) != w:
                    report.fail({"shape": w})
    rng = random.Random(cfg.seed)
    for _ in range(cfg.random_words):
        w = "".join(rng.choice("ab") for _ in range(rng.randint(1, 40)))
        report.items_tested += 1
        ref = rewrite(w, C_SYSTEM, "stack")
        if rewrite(w, C_SYSTEM, "leftmost") != ref or rewrite(w, C_SYSTEM, "rightmost") != ref:
            report.fail({"strategy_dependent": w})
    seen = set()
    for x in Region.cube(8):
        report.items_tested += 1
        w = from_normal_c(x)
        if to_normal_c(w) != x or w in seen:
            report.fail({"round_trip": x})
        seen.add(w)
    report.details = {
        "superpositions": [s.word for s in cp.superpositions],
        "irreducible_words_upto_12": irreducible,
    }
    return report


# -- running ---------------------------------------------------------------------


def run_suite(name: str, cfg: RunConfig) -> Report:
    try:
        runner = SUITES[name]
    except KeyError:
        raise ConfigError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}") from None
    return runner(cfg)


def _run_named(args: tuple[str, RunConfig]) -> Report:
    return run_suite(*args)


def run_suites(names: list[str], cfg: RunConfig) -> list[Report]:
    for name in names:
        if name not in SUITES:
            raise ConfigError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    if cfg.workers > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            return list(pool.map(_run_named, [(n, cfg) for n in names]))
    return [run_suite(n, cfg) for n in names]


def build_document(reports: list[Report], cfg: RunConfig) -> dict:
    """Top-level JSON document; ``generated_at`` is the only nondeterministic field."""
    discrepancies = [d for rep in reports for d in rep.discrepancies]
    return {
        "tool": "csgk",
        "version": __version__,
        "generated_at": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
        "config": cfg.to_dict(),
        "ok": all(rep.ok for rep in reports),
        "suites": [rep.to_dict() for rep in reports],
        "paper_discrepancies": discrepancies,
    }
