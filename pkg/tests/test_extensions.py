import pytest
from hypothesis import given, settings, strategies as st

from csgk.algebra import hom_h, mul_b, mul_c
from csgk.elements import BicyclicNF, CanonC, Region
from csgk.errors import AssociativityFailure, HomomorphismFailure, InvalidElement
from csgk.extensions import (
    MIXED_BRANCHES,
    Zero,
    check_pi_homomorphism,
    check_star_associativity,
    check_zero_associativity,
    ext_hom,
    format_ext,
    parse_ext,
    parse_ext_zero,
    restricted_products_agree,
    star_branch,
    star_mul,
    zero_mul,
)

exp = st.integers(0, 10)
c_elems = st.tuples(exp, exp, exp).filter(any).map(lambda t: CanonC(*t))
b_elems = st.tuples(exp, exp).map(lambda t: BicyclicNF(*t))
ext = st.one_of(c_elems, b_elems)


@pytest.mark.parametrize(
    "x, y, z",
    [
        ("C:0,1,2", "B:1,0", "C:0,1,1"),
        ("C:1,2,1", "B:3,2", "B:3,2"),
        ("C:2,0,1", "B:1,4", "B:2,4"),
        ("B:2,1", "C:1,0,0", "B:2,0"),
        ("B:0,2", "C:3,1,1", "C:1,1,1"),
        ("B:1,3", "C:1,2,0", "B:1,2"),
        ("B:1,2", "B:3,1", "B:2,1"),
        ("C:1,2,3", "C:2,1,1", "C:1,2,2"),
    ],
)
def test_star_examples(x, y, z):
    assert format_ext(star_mul(parse_ext(x), parse_ext(y))) == z


def test_parsing():
    assert parse_ext("B:0,0") == BicyclicNF(0, 0)
    assert parse_ext_zero("0") is Zero
    with pytest.raises(InvalidElement):
        parse_ext("X:1,1")
    with pytest.raises(InvalidElement):
        parse_ext_zero("B:1,1")


def test_branch_labels():
    assert star_branch(CanonC(0, 1, 2), BicyclicNF(1, 0)) == "CB:>"
    assert star_branch(BicyclicNF(0, 2), CanonC(3, 1, 1)) == "BC:<"
    assert star_branch(CanonC(0, 1, 0), CanonC(0, 1, 0)) == "CC:=0"


@settings(max_examples=400)
@given(ext, ext, ext)
def test_star_associative_random(x, y, z):
    assert star_mul(star_mul(x, y), z) == star_mul(x, star_mul(y, z))


@settings(max_examples=200)
@given(ext, ext)
def test_ext_hom_is_homomorphism(x, y):
    assert ext_hom(star_mul(x, y)) == mul_b(ext_hom(x), ext_hom(y))


def test_restrictions():
    assert list(restricted_products_agree(Region.cube(3), 3)) == []


def test_exhaustive_small_with_coverage():
    rep = check_star_associativity(Region.cube(2), 2)
    assert rep.ok
    assert set(MIXED_BRANCHES) <= set(rep.details["branches_hit"])
    assert rep.details["tag_combinations"] == 8


def test_incomplete_coverage_warns():
    rep = check_star_associativity(Region(1, 0, 0), 0)
    assert rep.ok and not rep.details["full_coverage"] and rep.warnings


def test_corrupted_product_detected():
    def broken(x, y):
        z = star_mul(x, y)
        if isinstance(x, BicyclicNF) and isinstance(y, CanonC) and x.j == y.k:
            return BicyclicNF(x.i, y.m + 1)
        return z

    with pytest.raises(AssociativityFailure) as info:
        check_star_associativity(Region.cube(2), 2, mul=broken)
    assert info.value.witness


def test_pi_homomorphism():
    rep = check_pi_homomorphism(Region.cube(3))
    assert rep.ok and rep.details["mixed_identities"] == 2 * 63**2


def test_pi_homomorphism_negative():
    with pytest.raises(HomomorphismFailure):
        check_pi_homomorphism(Region.cube(2), hom=lambda x: BicyclicNF(x.k, x.m + x.l))


def test_zero_extension():
    assert zero_mul(Zero, CanonC(1, 1, 1)) is Zero
    assert zero_mul(CanonC(0, 1, 0), CanonC(0, 1, 0)) == CanonC(0, 2, 0)
    assert check_zero_associativity(Region.cube(3)).ok


def test_zero_is_singleton():
    import pickle

    assert pickle.loads(pickle.dumps(Zero)) is Zero
    assert str(Zero) == "0"


def test_restriction_matches_factors():
    x, y = CanonC(2, 1, 3), CanonC(1, 0, 2)
    assert star_mul(x, y) == mul_c(x, y)
    assert ext_hom(x) == hom_h(x)
