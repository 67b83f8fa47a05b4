"""End-to-end acceptance checks; each test prints one PASS/FAIL line."""
import time

import numpy as np
import pytest

from semisine.additive import solve_kannappan_additive
from semisine.catalog import SMALL_COUNTS, catalog
from semisine.characters import check_prime_set_closure, enumerate_multiplicative
from semisine.cyclotomic import ZERO
from semisine.families import (brute_force_multiplicative_kannappan, enumerate_family_solutions,
                               solve_multiplicative_kannappan)
from semisine.hunter import HuntConfig, hunt
from semisine.semigroup import enumerate_small
from semisine.verifier import (check_branch_identity, check_centrality, check_character_independence,
                               check_independence_consequences, check_kannappan_sine)

from conftest import brute_iso_classes

CATALOG = catalog()
ORDER4 = catalog(max_order=4)
HUNT = HuntConfig(trials=200, seed=0, tol_converge=1e-6)
ABLATE = ("F2", "F3", "F6", "F7")


@pytest.fixture
def verdict(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\n[acceptance {n}] {'PASS' if ok else 'FAIL'}: {detail}")
    return emit


def _instances(items):
    return [(S, z) for S in items for z in S.elements]


def test_1_exact_witnesses(verdict):
    t0 = time.perf_counter()
    counts = {n: len(enumerate_small(n)) for n in (1, 2, 3)}
    brute = {n: brute_iso_classes(n) for n in (1, 2, 3)}
    bad, total = [], 0
    for S, z in _instances(CATALOG):
        for w in enumerate_family_solutions(S, z):
            total += 1
            rep = check_kannappan_sine(S, z, w.f, w.g)
            if not rep.passed or rep.max_residual != 0.0:
                bad.append((S.name, S.labels[z], w.family))
    dt = time.perf_counter() - t0
    ok = counts == brute == {n: SMALL_COUNTS[n] for n in (1, 2, 3)} and not bad and dt < 60
    verdict(1, ok, f"{total} witnesses on {len(CATALOG)} semigroups, counts {counts}, "
                   f"{len(bad)} failures, {dt:.1f}s")
    assert counts == brute == {1: 1, 2: 5, 3: 24}
    assert not bad
    assert dt < 60


def test_2_completeness_and_ablation(verdict):
    t0 = time.perf_counter()
    unclassified = []
    teeth = {fam: 0 for fam in ABLATE}
    for S, z in _instances(ORDER4):
        res = hunt(S, z, "sine", HUNT)
        assert all(s.residual <= HUNT.tol_converge for s in res.solutions)
        if res.unclassified:
            unclassified.append((S.name, S.labels[z], len(res.unclassified)))
        for fam in ABLATE:
            if res.tags().get(fam) and res.reclassify({fam}).unclassified:
                teeth[fam] += 1
    dt = time.perf_counter() - t0
    ok = not unclassified and all(teeth.values()) and dt < 600
    verdict(2, ok, f"unclassified on {len(unclassified)} instances; ablation hits {teeth}; {dt:.0f}s")
    assert not unclassified
    assert all(teeth.values())
    assert dt < 600


def test_3_structural_identities(verdict):
    failures = []
    for S in CATALOG:
        chars = enumerate_multiplicative(S)
        if not check_character_independence(chars).full:
            failures.append((S.name, "independence"))
        for chi in chars:
            if not check_prime_set_closure(chi).passed:
                failures.append((S.name, "closure"))
        for z in S.elements:
            for w in enumerate_family_solutions(S, z):
                if not check_branch_identity(S, z, w.f, w.g).passed:
                    failures.append((S.name, z, w.family, "branch"))
                if not check_independence_consequences(S, z, w.f, w.g).passed:
                    failures.append((S.name, z, w.family, "consequences"))
                if w.family in ("F2", "F3", "F4", "F5", "F7"):
                    if not (check_centrality(S, w.f, ternary=True).passed
                            and check_centrality(S, w.g, ternary=True).passed):
                        failures.append((S.name, z, w.family, "central"))
    verdict(3, not failures, f"{len(failures)} failures across {len(CATALOG)} semigroups")
    assert not failures


def _additive_nullity(S, z):
    n = S.order
    t = S.table
    rows = []
    for x in S.elements:
        for y in S.elements:
            r = np.zeros(n)
            r[t[t[x][y]][z]] += 1
            r[x] -= 1
            r[y] -= 1
            rows.append(r)
    return n - np.linalg.matrix_rank(np.array(rows))


def test_4_additive_oracle(verdict):
    bad = []
    for S, z in _instances(CATALOG):
        basis = solve_kannappan_additive(S, z)
        if len(basis) != _additive_nullity(S, z) or basis:
            bad.append((S.name, S.labels[z], len(basis)))
    verdict(4, not bad, f"only f = 0 on all {len(_instances(CATALOG))} instances; {len(bad)} mismatches")
    assert not bad


def test_5_multiplicative_kannappan(verdict):
    bad = []
    for S in CATALOG:
        chars = enumerate_multiplicative(S)
        for z in S.elements:
            formula = {tuple(chi(z) * v for v in chi.values) for chi in chars if chi(z) != ZERO}
            formula.add(tuple([ZERO] * S.order))
            got = {tuple(f.values) for f in solve_multiplicative_kannappan(S, z)}
            if not got == formula == brute_force_multiplicative_kannappan(S, z):
                bad.append((S.name, S.labels[z]))
    verdict(5, not bad, f"{len(bad)} mismatches against the value-grid search")
    assert not bad


def _subtraction_shape(S, z, f, g, tol):
    scale = max(1.0, np.max(np.abs(f)), np.max(np.abs(g)))
    eps = tol * scale
    if np.max(np.abs(f)) <= eps:
        return "zero"
    k = int(np.argmax(np.abs(f)))
    c = g[k] / f[k]
    sq = sorted(S.square_z0(z))
    if np.max(np.abs(g - c * f)) <= eps and (not sq or np.max(np.abs(f[sq])) <= eps):
        return "multiple"
    return None


def test_6_subtraction_shapes(verdict):
    bad, full, n_sol = [], 0, 0
    for S, z in _instances(CATALOG):
        res = hunt(S, z, "subtraction", HUNT)
        onto = S.square_z0(z) == S.all
        full += onto
        for s in res.solutions:
            n_sol += 1
            shape = _subtraction_shape(S, z, s.f, s.g, 1e-6)
            if shape is None or (onto and shape != "zero"):
                bad.append((S.name, S.labels[z], shape))
    verdict(6, not bad, f"{n_sol} solutions, {len(bad)} off-shape; {full} instances with S = S^2 z0")
    assert not bad


def test_7_exact_numeric_agreement(verdict):
    worst, total = 0.0, 0
    for S, z in _instances(CATALOG):
        for w in enumerate_family_solutions(S, z):
            total += 1
            worst = max(worst, check_kannappan_sine(S, z, w.f.numeric(), w.g.numeric()).max_residual)
    verdict(7, worst <= 1e-12, f"max numeric residual {worst:.2e} over {total} witnesses")
    assert worst <= 1e-12
