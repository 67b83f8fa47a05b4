import pytest

from semisine import linalg
from semisine.catalog import catalog
from semisine.characters import character_from_values
from semisine.cyclotomic import ZERO, CycNum
from semisine.families import (brute_force_multiplicative_kannappan, construct_special_solutions,
                               context, enumerate_family_solutions, rho_space,
                               solve_multiplicative_kannappan, solve_sine_subtraction)
from semisine.verifier import (check_branch_identity, check_centrality, check_independence_consequences,
                               check_kannappan_sine, check_sine_subtraction)

from conftest import cv

CATALOG = catalog()
INSTANCES = [(S, z) for S in CATALOG for z in S.elements]


def ids(item):
    S, z = item
    return f"{S.name}-{S.labels[z]}"


def as_set(funcs):
    return {tuple(f.values) for f in funcs}


# f(xyz0) = f(x) f(y) ------------------------------------------------------------

def test_mult_kannappan_c2(c2):
    assert as_set(solve_multiplicative_kannappan(c2, "a")) == {cv(0, 0), cv(1, 1), cv(-1, 1)}


def test_mult_kannappan_n3(n3):
    assert as_set(solve_multiplicative_kannappan(n3, "x")) == {cv(0, 0, 0), cv(1, 1, 1)}


def test_mult_kannappan_only_zero_when_all_characters_vanish(sl2):
    # identity character vanishes at 0, trivial one does not; chi = 1 always survives
    assert as_set(solve_multiplicative_kannappan(sl2, "0")) == {cv(0, 0), cv(1, 1)}


@pytest.mark.parametrize("inst", INSTANCES[:60], ids=ids)
def test_mult_kannappan_matches_grid(inst):
    S, z = inst
    assert as_set(solve_multiplicative_kannappan(S, z)) == brute_force_multiplicative_kannappan(S, z)


# rho spaces ---------------------------------------------------------------------

def test_rho_space_n3(n3):
    rs = rho_space(n3, character_from_values(n3, cv(1, 0, 0)))
    assert rs.positions == (n3.index("x"),) and rs.dim == 1
    assert rs.free_positions == (n3.index("x"),)


def test_rho_space_semilattice_trivial(sl2):
    rs = rho_space(sl2, character_from_values(sl2, cv(0, 1)))
    assert rs.positions == () and rs.dim == 0


def test_rho_space_c2xn3(c2xn3):
    chi = character_from_values(c2xn3, cv(1, 0, 0, -1, 0, 0))
    rs = rho_space(c2xn3, chi)
    ex, ax = c2xn3.index("(e,x)"), c2xn3.index("(a,x)")
    assert rs.dim == 1 and rs.free_positions == (ex,)
    assert rs.relations()[ax] == {ex: CycNum(-1)}
    assert rs.admits({ex: 1, ax: -1}) and not rs.admits({ex: 1, ax: 1})


# special solutions -------------------------------------------------------------

def _special_ok(S, z, chi, f):
    c0 = chi(z)
    g = tuple(c0 * v for v in chi.values)
    return check_kannappan_sine(S, z, f, g).passed and check_centrality(S, f).passed


def test_special_c2_trivial(c2):
    chi = character_from_values(c2, cv(1, 1))
    f = construct_special_solutions(c2, "a", chi)
    assert tuple(f.values) == cv(0, 0)


def test_special_c2xn3(c2xn3):
    chi = character_from_values(c2xn3, cv(1, 0, 0, -1, 0, 0))
    z = c2xn3.index("(a,e)")
    f = construct_special_solutions(c2xn3, z, chi, rho={c2xn3.index("(e,x)"): 1, c2xn3.index("(a,x)"): -1})
    assert _special_ok(c2xn3, z, chi, f)
    assert {x for x in c2xn3.elements if f[x]} == chi.prime_set


def test_special_n3_rho5(n3):
    chi = character_from_values(n3, cv(1, 0, 0))
    f = construct_special_solutions(n3, "e", chi, rho={n3.index("x"): 5})
    assert tuple(f.values) == cv(0, 5, 0)
    assert _special_ok(n3, 0, chi, f)


def test_special_errors(n3, c2xn3):
    chi0 = character_from_values(n3, cv(1, 0, 0))
    with pytest.raises(ValueError):
        construct_special_solutions(n3, "x", chi0)
    chi = character_from_values(c2xn3, cv(1, 0, 0, -1, 0, 0))
    with pytest.raises(ValueError):
        construct_special_solutions(c2xn3, "(a,e)", chi,
                                    rho={c2xn3.index("(e,x)"): 1, c2xn3.index("(a,x)"): 1})


# family witnesses --------------------------------------------------------------

def _find(sols, family, f, g):
    return any(w.family == family and tuple(w.f.values) == f and tuple(w.g.values) == g for w in sols)


def test_c2_za_witnesses(c2):
    sols = enumerate_family_solutions(c2, "a")
    assert _find(sols, "F2", cv("1/2", "1/2"), cv("1/2", "1/2"))
    assert _find(sols, "F2", cv("-1/2", "1/2"), cv("-1/2", "1/2"))
    assert _find(sols, "F3", cv(2, 0), cv(0, 1))
    assert not sols.by_family("F6")


def test_n3_zx_f6(n3):
    sols = enumerate_family_solutions(n3, "x")
    assert _find(sols, "F6", cv(1, 0, 0), cv(0, 0, 0))


def test_c2_ze_f4(c2):
    sols = enumerate_family_solutions(c2, "e")
    assert _find(sols, "F4", cv(0, 2), cv(1, 0))


def test_skipped_families_are_reported(c2):
    sols = enumerate_family_solutions(c2, "a")
    assert sols.support["F6"].startswith("none")
    assert any("F6" in ln for ln in sols.report_lines())


@pytest.mark.parametrize("inst", INSTANCES, ids=ids)
def test_witness_structure(inst):
    S, z = inst
    sols = enumerate_family_solutions(S, z)
    for w in sols:
        assert check_kannappan_sine(S, z, w.f, w.g).passed
        rank = linalg.rank([list(w.f.values), list(w.g.values)])
        if w.family == "F2":
            assert rank == 1
        if w.family in ("F3", "F4", "F5"):
            assert rank == 2
        if w.family in ("F2", "F3", "F4", "F5", "F7"):
            assert check_centrality(S, w.f).passed and check_centrality(S, w.g).passed
        assert check_branch_identity(S, z, w.f, w.g).passed
        assert check_independence_consequences(S, z, w.f, w.g).passed
        if rank == 2 and not w.f[z]:
            assert w.g[z] != ZERO


# sine subtraction --------------------------------------------------------------

def test_subtraction_lz2_only_sub1(lz2):
    sols = solve_sine_subtraction(lz2, "l1")
    assert sols.families == ["SUB1"]


def test_subtraction_n3_sub2(n3):
    sols = solve_sine_subtraction(n3, "x")
    assert "SUB2" in sols.families
    f, g = cv(1, 0, 0), cv(3, 0, 0)
    assert check_sine_subtraction(n3, "x", f, g).passed
    assert any(w.family == "SUB2" and tuple(w.f.values) == f for w in sols)


@pytest.mark.parametrize("inst", INSTANCES, ids=ids)
def test_subtraction_witnesses_verify(inst):
    S, z = inst
    sols = solve_sine_subtraction(S, z)
    assert ("SUB2" in sols.families) == (S.square_z0(z) != S.all)
    for w in sols:
        assert check_sine_subtraction(S, z, w.f, w.g).passed


def test_context_is_cached(c2xn3):
    assert context(c2xn3, 0) is context(c2xn3, "(e,e)")
