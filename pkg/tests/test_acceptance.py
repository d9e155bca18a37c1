"""Acceptance criteria, one test each, at their stated tolerances."""

import time

from csgk.algebra import AB, A_, B_, EquationShape, mul_c, solve_equation
from csgk.config import RunConfig
from csgk.elements import CanonC, Cell, Region
from csgk.extensions import check_star_associativity
from csgk.suites import PRIMARY_SHIFT, SANDWICH_SHIFT, run_suite
from csgk.vectors import replay_vectors, shipped_vectors
from csgk.words import C_SYSTEM, critical_pairs_check, is_irreducible, match_normal_c, from_normal_c
from itertools import product


def test_c01_oracle_equivalence(default_run, criterion):
    c = criterion(1, "mul_c equals rewriting oracle on Region(4,4,4)^2")
    rep, secs = default_run["eq21-oracle"]
    assert rep.ok and rep.items_tested == 124**2
    assert secs < 5
    c.passed(f"{rep.items_tested} pairs in {secs:.2f}s")


def test_c02_associativity(default_run, criterion):
    c = criterion(2, "associativity of C on Region(4,4,4)^3")
    rep, secs = default_run["assoc-c"]
    assert rep.ok and rep.items_tested == 124**3
    assert secs < 10
    c.passed(f"{rep.items_tested} triples in {secs:.2f}s")


def test_c03_confluence(default_run, criterion):
    c = criterion(3, "critical pairs and strategy independence")
    cp = critical_pairs_check(C_SYSTEM)
    assert cp.ok
    assert [s.word for s in cp.superpositions] == ["aabb"]
    s = cp.superpositions[0]
    assert s.via_left == s.via_right == "ab"
    rep, _ = default_run["confluence"]
    assert rep.ok
    c.passed("one superposition aabb -> ab; words <= 12 agree under three strategies")


def test_c04_normal_form_shape(criterion):
    c = criterion(4, "irreducible words <= 12 have shape b^k(ab)^l a^m")
    count = 0
    for n in range(1, 13):
        for letters in product("ab", repeat=n):
            w = "".join(letters)
            if is_irreducible(w):
                count += 1
                assert from_normal_c(match_normal_c(w)) == w
    assert count > 0
    c.passed(f"{count} irreducible words")


def test_c05_homomorphism(default_run, criterion):
    c = criterion(5, "h(xy) = h(x)h(y) on Region(4,4,4)^2")
    rep, _ = default_run["hom"]
    assert rep.ok and rep.items_tested >= 124**2
    c.passed()


def test_c06_star_associativity(criterion):
    c = criterion(6, "star associativity, Region(3,3,3) with bicyclic cap 3")
    t0 = time.perf_counter()
    rep = check_star_associativity(Region.cube(3), 3)
    secs = time.perf_counter() - t0
    assert rep.ok and rep.failure_count == 0
    assert rep.details["full_coverage"]
    assert secs < 10
    c.passed(f"{rep.items_tested} triples, {rep.details['case_count']} (tag, branch) cases, {secs:.2f}s")


def test_c07_solve_claims(default_run, criterion):
    c = criterion(7, "solution sets of the separating equations")
    for r in (Region.cube(4), Region.cube(6)):
        assert solve_equation(EquationShape.parse("axb"), AB, r) == Cell(0, 0).within(r)
        for p in range(5):
            assert solve_equation(EquationShape.parse("axb"), CanonC(0, p + 2, 0), r) == {CanonC(1, p, 1)}
            assert solve_equation(EquationShape.parse("xb"), CanonC(0, p + 1, 0), r) == {CanonC(0, p, 1)}
            assert solve_equation(EquationShape.parse("ax"), CanonC(0, p + 1, 0), r) == {CanonC(1, p, 0)}
    rep, _ = default_run["solve-claims"]
    assert rep.ok
    assert {d["id"] for d in rep.discrepancies} == {PRIMARY_SHIFT["id"], SANDWICH_SHIFT["id"]}
    c.passed(f"{rep.details['claims']} claims on caps and caps+2")


def test_c08_green(default_run, criterion):
    c = criterion(8, "Green witnesses, empty H-scan, simplicity witnesses")
    rep, _ = default_run["green"]
    assert rep.ok
    d = rep.details
    assert d["a_R_a2"] is not None and d["b_L_b2"] is not None
    assert d["nontrivial_h_pairs"] == 0
    c.passed(f"longest simple witness {d['longest_simple_witness']}")


def test_c09_idempotent_free(default_run, criterion):
    c = criterion(9, "no idempotents in Region(6,6,6)")
    rep, _ = default_run["idempotent-free"]
    assert rep.ok and rep.items_tested == 7**3 - 1
    c.passed()


def test_c10_non_stability(default_run, criterion):
    c = criterion(10, "b.C is a proper part of ab.C")
    rep, _ = default_run["stability"]
    assert rep.ok
    assert mul_c(AB, B_) == B_
    assert rep.params["absence_region"] == "8,8,8"
    c.passed()


def test_c11_telescope(default_run, criterion):
    c = criterion(11, "a^n b^n = ab for n <= 20")
    rep, _ = default_run["telescope"]
    assert rep.ok and rep.items_tested == 20
    assert all(mul_c(CanonC(0, 0, n), CanonC(n, 0, 0)) == AB for n in range(1, 21))
    c.passed()


def test_c12_injectivity(default_run, criterion):
    c = criterion(12, "phi_ij injective for i, j <= 3")
    rep, _ = default_run["injectivity"]
    assert rep.ok
    c.passed()


def test_c13_tau_p(default_run, criterion):
    c = criterion(13, "tau_p continuity, metric axioms and base compatibility")
    rep, secs = default_run["tau-p"]
    assert rep.ok
    assert rep.params["primes"] == [2, 3, 5] and rep.params["alpha"] == [1, 3]
    assert rep.details["parameter_sets"] == 9
    assert rep.details["smallest_basic_set"] >= 2
    c.passed(f"{rep.items_tested} memberships in {secs:.1f}s")


def test_c14_ext_topology(default_run, criterion):
    c = criterion(14, "continuity cases 1-3 a)-c) on C with B(a,b) adjoined")
    rep, _ = default_run["ext-topology"]
    assert rep.ok
    assert sorted(rep.details["sub_statements"]) == [f"{i}{s}" for i in "123" for s in "abc"]
    c.passed()


def test_c15_zero_topology(default_run, criterion):
    c = criterion(15, "continuity at zero on Region(7,3,7)")
    rep, _ = default_run["zero-topology"]
    assert rep.ok and rep.params["region"] == "7,3,7"
    c.passed()


def test_c16_fix_and_retract(default_run, criterion):
    c = criterion(16, "Fix-set inclusions and translation retracts")
    fix, _ = default_run["fix-sets"]
    ret, _ = default_run["retract-behavior"]
    assert fix.ok and ret.ok
    for key, rec in ret.details["idempotence_exceptions"].items():
        k = int(key.split(",")[0])
        assert rec["left_image_exponents"] == [k] and rec["right_image_exponents"] == [k]
    c.passed("idempotence exceptions sit exactly at first exponent k")


def test_c17_regression_corpus(criterion):
    c = criterion(17, "shipped vector corpus replays exactly")
    rep = replay_vectors(shipped_vectors())
    assert rep.ok and not rep.vacuous
    c.passed(f"{rep.items_tested} records")


def test_c18_discrepancies(default_run, criterion):
    c = criterion(18, "default run reports exactly the two known discrepancies")
    ids = [d["id"] for rep, _ in default_run.values() for d in rep.discrepancies]
    assert sorted(ids) == sorted([PRIMARY_SHIFT["id"], SANDWICH_SHIFT["id"]])
    assert all(rep.ok for rep, _ in default_run.values())
    c.passed(", ".join(ids))
