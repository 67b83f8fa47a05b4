"""Multiplicative functions on a finite semigroup and their null spaces."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce
from itertools import product

from .cyclotomic import CycNum, ZERO, root_of_unity
from .semigroup import ElementSet, Semigroup, product_set


def character_conductor(S: Semigroup) -> int:
    """lcm of the cycle lengths of all monogenic subsemigroups."""
    return reduce(lambda a, b: a * b // math.gcd(a, b), (S.period(x) for x in S.elements), 1)


@dataclass(frozen=True)
class Character:
    """A nonzero multiplicative function ``chi`` with its null-space data.

    ``exponents[x]`` is ``None`` where ``chi(x) = 0`` and otherwise ``k``
    with ``chi(x) = zeta_N^k`` for the semigroup's conductor ``N``.
    """

    semigroup: Semigroup = field(repr=False, compare=False)
    conductor: int
    exponents: tuple
    values: tuple = field(compare=False)
    null_space: ElementSet = field(compare=False)
    null_square: ElementSet = field(compare=False)
    prime_set: ElementSet = field(compare=False)

    @property
    def is_exponential(self) -> bool:
        return any(e is not None for e in self.exponents)

    def __call__(self, x: int) -> CycNum:
        return self.values[x]

    @property
    def outside(self) -> ElementSet:
        """``S \\ I_chi``."""
        return self.semigroup.all - self.null_space

    @property
    def null_minus_prime(self) -> ElementSet:
        return self.null_space - self.prime_set

    def is_trivial(self) -> bool:
        return all(e == 0 for e in self.exponents)

    def describe(self) -> str:
        S = self.semigroup
        vals = ", ".join(f"{S.labels[i]}:{v}" for i, v in enumerate(self.values))
        return (f"chi=({vals})  I={S.fmt_set(self.null_space)}  "
                f"I^2={S.fmt_set(self.null_square)}  P={S.fmt_set(self.prime_set)}")


def make_character(S: Semigroup, exponents, conductor: int | None = None) -> Character:
    n_cond = conductor or character_conductor(S)
    exps = tuple(None if e is None else e % n_cond for e in exponents)
    values = tuple(ZERO if e is None else root_of_unity(n_cond, e) for e in exps)
    ns = null_space_of(exps)
    nsq = product_set(S, ns, ns)
    ps = _prime_set(S, ns, nsq)
    return Character(S, n_cond, exps, values, ns, nsq, ps)


def character_from_values(S: Semigroup, values) -> Character:
    """Wrap explicit exact values (each 0 or a root of unity)."""
    n_cond = character_conductor(S)
    exps = []
    for v in values:
        if not v:
            exps.append(None)
            continue
        k = next((k for k in range(n_cond) if root_of_unity(n_cond, k) == v), None)
        if k is None:
            raise ValueError(f"{v} is not an {n_cond}-th root of unity")
        exps.append(k)
    chi = make_character(S, exps, n_cond)
    if not is_multiplicative_exps(S, chi.exponents, n_cond):
        raise ValueError("values are not multiplicative")
    return chi


def null_space_of(exps) -> ElementSet:
    return frozenset(i for i, e in enumerate(exps) if e is None)


def null_space(chi: Character) -> ElementSet:
    return chi.null_space


def prime_set(chi: Character) -> ElementSet:
    return chi.prime_set


def _prime_set(S: Semigroup, ns: ElementSet, nsq: ElementSet) -> ElementSet:
    if not ns:
        return frozenset()
    keep = ns - nsq
    out = S.all - ns
    t = S.table
    return frozenset(
        p for p in keep
        if all(t[u][p] in keep and t[p][v] in keep and t[t[u][p]][v] in keep
               for u in out for v in out)
    )


def _mul_exp(a, b, n):
    return None if a is None or b is None else (a + b) % n


def is_multiplicative_exps(S: Semigroup, exps, n: int) -> bool:
    t = S.table
    return all(exps[t[i][j]] == _mul_exp(exps[i], exps[j], n)
               for i in S.elements for j in S.elements)


def enumerate_multiplicative(S: Semigroup) -> list[Character]:
    """Every exponential on ``S`` (multiplicative, not identically zero).

    Backtracks element by element over ``{0} u {r-th roots of unity}``,
    ``r`` the element's period, checking multiplicativity on every pair
    whose three entries are assigned.  Output order is deterministic.
    """
    n = S.order
    N = character_conductor(S)
    t = S.table
    options = []
    for x in S.elements:
        r = S.period(x)
        options.append([None] + [k * (N // r) for k in range(r)])
    assign = [False] * n
    exps: list = [None] * n
    found = []
    # pairs (a, b) with a*b = c, grouped by c
    preimages = [[] for _ in S.elements]
    for a in S.elements:
        for b in S.elements:
            preimages[t[a][b]].append((a, b))

    def ok(x):
        for y in S.elements:
            if not assign[y]:
                continue
            for a, b in ((x, y), (y, x)):
                c = t[a][b]
                if assign[c] and exps[c] != _mul_exp(exps[a], exps[b], N):
                    return False
        for a, b in preimages[x]:
            if assign[a] and assign[b] and exps[x] != _mul_exp(exps[a], exps[b], N):
                return False
        return True

    def rec(x):
        if x == n:
            if any(e is not None for e in exps):
                found.append(make_character(S, exps, N))
            return
        assign[x] = True
        for v in options[x]:
            exps[x] = v
            if ok(x):
                rec(x + 1)
        assign[x] = False
        exps[x] = None

    rec(0)
    return found


def brute_force_multiplicative(S: Semigroup) -> list[tuple]:
    """Exponent vectors of all exponentials, by scanning the full value grid.

    Independent of :func:`enumerate_multiplicative`; every element ranges
    over ``{0} u mu_N`` with ``N`` the global conductor.
    """
    N = character_conductor(S)
    grid = [None] + list(range(N))
    return [exps for exps in product(grid, repeat=S.order)
            if any(e is not None for e in exps) and is_multiplicative_exps(S, exps, N)]


@dataclass
class ClosureReport:
    passed: bool
    violation: tuple | None = None

    def __bool__(self):
        return self.passed


def check_prime_set_closure(chi: Character) -> ClosureReport:
    """``p in P, u, v outside I  =>  up, pv, upv in P``."""
    S = chi.semigroup
    t = S.table
    for p in sorted(chi.prime_set):
        for u in sorted(chi.outside):
            for v in sorted(chi.outside):
                for x in (t[u][p], t[p][v], t[t[u][p]][v]):
                    if x not in chi.prime_set:
                        return ClosureReport(False, (p, u, v))
    return ClosureReport(True)
