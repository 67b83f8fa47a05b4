import pytest
from hypothesis import given, settings, strategies as st

from semisine.catalog import catalog
from semisine.characters import enumerate_multiplicative
from semisine.cyclotomic import CycNum
from semisine.families import enumerate_family_solutions
from semisine.verifier import (CFunc, check_additive_kannappan, check_branch_identity, check_centrality,
                               check_character_independence, check_independence,
                               check_independence_consequences, check_kannappan_sine,
                               check_multiplicative_kannappan, check_sine_subtraction, gamma_squared)

from conftest import cv

CATALOG = catalog(max_order=3)


def test_sine_pass_c2(c2):
    assert check_kannappan_sine(c2, "a", cv("1/2", "1/2"), cv("1/2", "1/2")).passed


def test_sine_fail_reports_pairs(c2):
    rep = check_kannappan_sine(c2, "a", cv(1, 0), cv(1, 0))
    assert not rep.passed
    pairs = {(x, y) for x, y, *_ in rep.violations}
    assert (0, 0) in pairs
    # f(ee a) = f(a) = 0 against f(e)g(e) + f(e)g(e) = 2
    x, y, lhs, rhs = next(v for v in rep.violations if v[:2] == (0, 0))
    assert lhs == CycNum(0) and rhs == CycNum(2)
    assert any("(e, e)" in ln for ln in rep.lines(c2))


def test_subtraction_pass_and_fail(n3, c2):
    assert check_sine_subtraction(n3, "x", cv(1, 0, 0), cv(2, 0, 0)).passed
    assert not check_sine_subtraction(c2, "e", cv(0, 1), cv(1, 0)).passed


def test_multiplicative_and_additive(c2):
    assert check_multiplicative_kannappan(c2, "a", cv(-1, 1)).passed
    assert not check_multiplicative_kannappan(c2, "a", cv(1, -1)).passed
    assert check_additive_kannappan(c2, "e", cv(0, 0)).passed


def test_branch_identity_f2_gamma_one(c2):
    rep = check_branch_identity(c2, "a", cv("1/2", "1/2"), cv("1/2", "1/2"))
    assert rep.passed and rep.info["branch"] == "f(z0)!=0"
    assert rep.info["gamma_sq"] == CycNum(1)


def test_branch_identity_f3_zero_branch(c2):
    rep = check_branch_identity(c2, "a", cv(2, 0), cv(0, 1))
    assert rep.passed and rep.info["branch"] == "f(z0)=0"


def test_branch_identity_zero_f(c2):
    rep = check_branch_identity(c2, "a", cv(0, 0), cv(7, 3))
    assert rep.passed and rep.info["branch"] == "f(z0)=0"


def test_branch_identity_requires_solution(c2):
    with pytest.raises(ValueError):
        check_branch_identity(c2, "a", cv(1, 0), cv(1, 0))


def test_gamma_squared_needs_nonzero_f(c2):
    with pytest.raises(ValueError):
        gamma_squared(c2, "a", cv(0, 0), cv(1, 1))


def test_independence_consequences_f3(c2):
    rep = check_independence_consequences(c2, "a", cv(2, 0), cv(0, 1))
    assert rep.passed and rep.info["independent"]
    assert "ii-a" in rep.info["applied"]


def test_independence_consequences_vacuous(c2, n3):
    rep = check_independence_consequences(c2, "a", cv("1/2", "1/2"), cv("1/2", "1/2"))
    assert rep.passed and rep.info["applied"].startswith("none")
    rep = check_independence_consequences(n3, "x", cv(1, 0, 0), cv(0, 0, 0))
    assert rep.passed and not rep.info["independent"]


def test_centrality(lz2, c2):
    assert not check_centrality(lz2, cv(1, 2)).passed
    assert check_centrality(lz2, cv(1, 1)).passed
    assert check_centrality(c2, cv(3, 5), ternary=True).passed


def test_centrality_condition_on_ideal(n3):
    # chi = (1,0,0): I \ P = {0}, outside = {e}
    from semisine.characters import character_from_values
    chi = character_from_values(n3, cv(1, 0, 0))
    assert check_centrality(n3, cv(0, 5, 0), chi=chi).passed
    assert not check_centrality(n3, cv(0, 0, 1), chi=chi).passed


def test_independence_ranks(c2):
    triv, sgn = cv(1, 1), cv(1, -1)
    assert check_independence([triv, sgn]).full
    rep = check_independence([triv, triv])
    assert rep.rank == 1 and not rep.full
    assert check_independence([sgn]).rank == 1
    assert check_independence([triv, sgn], restrict=[0]).rank == 1
    assert check_independence([[1.0, 1.0], [1.0, -1.0 + 1e-13]]).rank == 2


@pytest.mark.parametrize("S", CATALOG, ids=lambda S: S.name)
def test_characters_independent(S):
    assert check_character_independence(enumerate_multiplicative(S)).full


@pytest.mark.parametrize("S", CATALOG, ids=lambda S: S.name)
def test_numeric_agrees_with_exact(S):
    for z in S.elements:
        for w in enumerate_family_solutions(S, z):
            ex = check_kannappan_sine(S, z, w.f, w.g)
            nu = check_kannappan_sine(S, z, w.f.numeric(), w.g.numeric())
            assert ex.passed and nu.passed and nu.max_residual < 1e-12


small = st.sampled_from(CATALOG)
ints = st.integers(-3, 3)


@settings(max_examples=150, deadline=None)
@given(small, st.data())
def test_numeric_exact_same_verdict(S, data):
    n = S.order
    f = data.draw(st.lists(ints, min_size=n, max_size=n))
    g = data.draw(st.lists(ints, min_size=n, max_size=n))
    z = data.draw(st.integers(0, n - 1))
    fx, gx = CFunc.of([CycNum(v) for v in f]), CFunc.of([CycNum(v) for v in g])
    ex = check_kannappan_sine(S, z, fx, gx)
    nu = check_kannappan_sine(S, z, fx.numeric(), gx.numeric())
    assert ex.passed == nu.passed
    assert {v[:2] for v in ex.violations} == {v[:2] for v in nu.violations}
    assert abs(ex.max_residual - nu.max_residual) < 1e-9


@settings(max_examples=100, deadline=None)
@given(small, st.data())
def test_solutions_closed_under_f_scaling(S, data):
    # (f, g) solution => (c f, g) solution
    z = data.draw(st.integers(0, S.order - 1))
    sols = list(enumerate_family_solutions(S, z))
    w = data.draw(st.sampled_from(sols))
    c = CycNum(data.draw(st.integers(-5, 5)))
    assert check_kannappan_sine(S, z, w.f.scale(c), w.g).passed


def test_independence_consequences_f7_n3(n3):
    f, g = cv(0, 1, 0), cv(1, 0, 0)
    assert check_kannappan_sine(n3, "e", f, g).passed
    rep = check_independence_consequences(n3, "e", f, g)
    assert rep.passed and rep.info["independent"]
