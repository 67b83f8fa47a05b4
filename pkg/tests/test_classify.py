import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from semisine.catalog import catalog
from semisine.classify import classify_solution, classify_subtraction
from semisine.cyclotomic import CycNum
from semisine.families import enumerate_family_solutions, solve_sine_subtraction
from semisine.verifier import CFunc

from conftest import I4, cv

CATALOG = catalog()
INSTANCES = [(S, z) for S in CATALOG for z in S.elements]


def ids(item):
    S, z = item
    return f"{S.name}-{S.labels[z]}"


def test_f5_witness_c2(c2):
    # chi1 = trivial, chi2 = sgn, gamma = 1
    c = classify_solution(c2, "a", cv(1, 0), cv(0, 1))
    assert c.tag == "F3"                  # F3 precedes F5 in the fixed order
    assert {"F3", "F5"} <= set(c.all_tags)


def test_f5_needs_nonvanishing_fz0():
    from semisine.semigroup import cyclic
    S = cyclic(4)
    # chi1 = trivial, chi2(ζ) = i; z0 = generator: f(z0) != 0
    chis = [[CycNum(1)] * 4, [I4 ** k for k in range(4)]]
    z = 1
    a1 = [chis[0][z] * v for v in chis[0]]
    a2 = [chis[1][z] * v for v in chis[1]]
    f = [(x - y) / CycNum(2) for x, y in zip(a1, a2)]
    g = [(x + y) / CycNum(2) for x, y in zip(a1, a2)]
    c = classify_solution(S, z, f, g)
    assert c.tag == "F5" and c.params["gamma"] == CycNum(1)


def test_f1(c2):
    c = classify_solution(c2, "a", cv(0, 0), (CycNum(7), I4))
    assert c.tag == "F1"


def test_f6(n3):
    assert classify_solution(n3, "x", cv(1, 0, 0), cv(0, 0, 0)).tag == "F6"


def test_f2_params(c2):
    c = classify_solution(c2, "a", cv("1/2", "1/2"), cv("1/2", "1/2"))
    assert c.tag == "F2" and c.params["b"] == CycNum(1)


def test_f7_prime_part(n3):
    c = classify_solution(n3, "e", cv(0, 1, 0), cv(1, 0, 0))
    assert c.tag == "F7" and list(c.params["rho"].values()) == [CycNum(1)]


def test_disabled_family_unclassified(c2):
    c = classify_solution(c2, "a", cv("1/2", "1/2"), cv("1/2", "1/2"), disabled={"F2"})
    assert not c.classified and str(c) == "unclassified"


def test_mixed_modes_rejected(c2):
    with pytest.raises(ValueError):
        classify_solution(c2, "a", cv(0, 0), CFunc((0j, 0j), False))


@pytest.mark.parametrize("inst", INSTANCES, ids=ids)
def test_round_trip_exact_and_numeric(inst):
    S, z = inst
    for w in enumerate_family_solutions(S, z):
        ex = classify_solution(S, z, w.f, w.g)
        assert ex.classified and w.family in ex.all_tags
        nu = classify_solution(S, z, w.f.numeric(), w.g.numeric())
        assert nu.tag == ex.tag and w.family in nu.all_tags


@pytest.mark.parametrize("inst", INSTANCES, ids=ids)
def test_subtraction_round_trip(inst):
    S, z = inst
    for w in solve_sine_subtraction(S, z):
        assert classify_subtraction(S, z, w.f, w.g).tag == w.family


def test_subtraction_rejects_other(c2):
    assert classify_subtraction(c2, "e", cv(0, 1), cv(1, 0)).tag is None


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(INSTANCES), st.data())
def test_perturbed_witness_still_classifies(inst, data):
    # numeric witnesses carry rounding-level noise; the classifier must absorb it
    S, z = inst
    sols = list(enumerate_family_solutions(S, z))
    w = data.draw(st.sampled_from(sols))
    seed = data.draw(st.integers(0, 2**16))
    rng = np.random.default_rng(seed)
    n = S.order
    noise = lambda: 1e-11 * (rng.standard_normal(n) + 1j * rng.standard_normal(n))
    f = CFunc(tuple(np.array(w.f.numeric().values) + noise()), False)
    g = CFunc(tuple(np.array(w.g.numeric().values) + noise()), False)
    c = classify_solution(S, z, f, g)
    assert w.family in c.all_tags
