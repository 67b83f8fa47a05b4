"""Exact solution families of the Kannappan-sine law

    f(x y z0) = f(x) g(y) + f(y) g(x),

of its special cases ``f(xyz0) = f(x)f(y)`` and
``f(xyz0) = chi(z0)[f(x)chi(y) + f(y)chi(x)]``, and of the companion
equation ``f(xyz0) = f(x)g(y) - f(y)g(x)``.

Free scalar parameters are instantiated from a small deterministic sample
set; each emitted pair is verified exactly before it is returned.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Mapping, Sequence

from . import linalg
from .additive import additive_basis
from .characters import Character, character_conductor, enumerate_multiplicative
from .cyclotomic import CycNum, ONE, ZERO, as_cyc, root_of_unity
from .semigroup import ElementSet, Semigroup
from .verifier import (CFunc, check_kannappan_sine, check_multiplicative_kannappan,
                       check_sine_subtraction)

log = logging.getLogger(__name__)

HALF = CycNum(Fraction(1, 2))
DEFAULT_SAMPLES: tuple[CycNum, ...] = (ONE, -ONE, HALF, CycNum(2), root_of_unity(4, 1))
FREE_VALUES: tuple[CycNum, ...] = (ONE, root_of_unity(4, 1), CycNum(-2))

FAMILIES = ("F1", "F2", "F3", "F4", "F5", "F6", "F7")

FAMILY_FORMS = {
    "F1": "f = 0, g arbitrary",
    "F2": "f = chi(z0)/(2b) chi, g = chi(z0)/2 chi  (b != 0, chi(z0) != 0)",
    "F3": "f = delta (chi1 + chi2), g = chi1(z0)/2 (chi1 - chi2)  (chi2(z0) = -chi1(z0) != 0)",
    "F4": "f = c (chi1 - chi2), g = chi1(z0)/2 (chi1 + chi2)  (chi2(z0) = chi1(z0) != 0)",
    "F5": "f = (chi1(z0)chi1 - chi2(z0)chi2)/(2 gamma), g = (chi1(z0)chi1 + chi2(z0)chi2)/2",
    "F6": "g = 0, f = f_z0 on S \\ S^2z0 (nonzero), f = 0 on S^2z0  (S != S^2z0)",
    "F7": "g = chi(z0) chi, f = chi (A + A(z0)) on S\\I, rho on P, 0 on I\\P",
    "SUB1": "f = 0, g arbitrary",
    "SUB2": "g = c f, f = f_z0 on S \\ S^2z0 (nonzero), f = 0 on S^2z0  (S != S^2z0)",
}


@dataclass
class SolutionPair:
    f: CFunc
    g: CFunc
    family: str
    params: dict = field(default_factory=dict)

    def describe(self, S: Semigroup) -> str:
        ps = ", ".join(f"{k}={_fmt_param(v, S)}" for k, v in self.params.items())
        return f"{self.family}: f={self.f} g={self.g}" + (f"  [{ps}]" if ps else "")


def _fmt_param(v, S):
    if isinstance(v, Character):
        return "(" + ", ".join(str(x) for x in v.values) + ")"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{S.labels[k]}:{x}" for k, x in sorted(v.items())) + "}"
    if isinstance(v, (list, tuple)):
        return "(" + ", ".join(str(x) for x in v) + ")"
    return str(v)


# ---------------------------------------------------------------------------
# per-(S, z0) data shared by constructors and the classifier

@dataclass(frozen=True)
class RhoSpace:
    """Admissible ``rho : P_chi -> C``: nullspace of the linear constraints
    ``rho(up) = chi(u) rho(p)``, ``rho(pv) = chi(v) rho(p)``,
    ``rho(upv) = chi(uv) rho(p)`` and ``rho = 0`` at products ``xy``, ``yx``
    with x in I\\P, y outside I."""

    character: Character = field(repr=False)
    positions: tuple[int, ...]
    constraints: tuple[tuple[CycNum, ...], ...]
    basis: tuple[tuple[CycNum, ...], ...]
    free_positions: tuple[int, ...]
    forced_zero: ElementSet

    @property
    def dim(self) -> int:
        return len(self.basis)

    def vector(self, rho) -> list[CycNum]:
        if isinstance(rho, Mapping):
            return [as_cyc(rho.get(p, 0)) for p in self.positions]
        vals = list(rho)
        if len(vals) != len(self.positions):
            raise ValueError(f"rho needs {len(self.positions)} values, got {len(vals)}")
        return [as_cyc(v) for v in vals]

    def admits(self, rho) -> bool:
        v = self.vector(rho)
        return all(not sum((c * x for c, x in zip(row, v)), ZERO) for row in self.constraints)

    def relations(self):
        """Each position as a combination of the free positions."""
        out = {}
        for k, p in enumerate(self.positions):
            out[p] = {self.free_positions[j]: b[k] for j, b in enumerate(self.basis) if b[k]}
        return out


def rho_space(S: Semigroup, chi: Character) -> RhoSpace:
    pos = tuple(sorted(chi.prime_set))
    col = {p: k for k, p in enumerate(pos)}
    t = S.table
    rows = []
    seen = set()

    def add(row):
        key = tuple(row)
        if any(row) and key not in seen:
            seen.add(key)
            rows.append(row)

    out = sorted(chi.outside)
    for p in pos:
        for u in out:
            for v in out:
                for x, coef in ((t[u][p], chi(u)), (t[p][v], chi(v)), (t[t[u][p]][v], chi(t[u][v]))):
                    row = [ZERO] * len(pos)
                    row[col[x]] = row[col[x]] + ONE
                    row[col[p]] = row[col[p]] - coef
                    add(row)
    forced = set()
    for x in chi.null_minus_prime:
        for y in out:
            for q in (t[x][y], t[y][x]):
                if q in col:
                    forced.add(q)
    for q in sorted(forced):
        row = [ZERO] * len(pos)
        row[col[q]] = ONE
        add(row)
    # eliminate on reversed columns so the free parameters are the earliest elements
    k = len(pos)
    rev = [row[::-1] for row in rows]
    basis = [b[::-1] for b in linalg.nullspace(rev, k, ZERO, ONE)] if pos else []
    basis.sort(key=lambda b: next(i for i, x in enumerate(b) if x))
    free = tuple(pos[next(i for i, x in enumerate(b) if x)] for b in basis)
    return RhoSpace(chi, pos, tuple(tuple(r) for r in rows), tuple(tuple(b) for b in basis),
                    free, frozenset(forced))


@dataclass
class CharData:
    chi: Character
    at_z0: CycNum
    rho: RhoSpace
    additive_dim: int
    numeric: tuple = ()
    numeric_constraints: tuple = ()


@dataclass
class Context:
    S: Semigroup
    z0: int
    characters: list[Character]
    chardata: list[CharData]
    square_z0: ElementSet

    @property
    def complement(self) -> ElementSet:
        return self.S.all - self.square_z0

    def nonvanishing(self) -> list[int]:
        """Indices of characters with ``chi(z0) != 0``."""
        return [k for k, d in enumerate(self.chardata) if d.at_z0]


@lru_cache(maxsize=256)
def _context(S: Semigroup, z: int) -> Context:
    chars = enumerate_multiplicative(S)
    data = []
    for chi in chars:
        rs = rho_space(S, chi)
        add = additive_basis(S, chi.outside)
        cd = CharData(chi, chi(z), rs, add.dim)
        cd.numeric = tuple(complex(v) for v in chi.values)
        cd.numeric_constraints = tuple(tuple(complex(c) for c in row) for row in rs.constraints)
        data.append(cd)
    return Context(S, z, chars, data, S.square_z0(z))


def context(S: Semigroup, z0) -> Context:
    return _context(S, S.index(z0))


# ---------------------------------------------------------------------------
# f(x y z0) = f(x) f(y)

def solve_multiplicative_kannappan(S: Semigroup, z0) -> list[CFunc]:
    """All solutions: ``0`` and ``chi(z0) chi`` for exponentials with ``chi(z0) != 0``."""
    ctx = context(S, z0)
    out = [CFunc.zeros(S.order)]
    for d in ctx.chardata:
        if d.at_z0:
            out.append(CFunc(tuple(d.at_z0 * v for v in d.chi.values), True))
    for f in out:
        rep = check_multiplicative_kannappan(S, z0, f)
        if not rep.passed:
            raise AssertionError(f"constructed solution {f} fails f(xyz0) = f(x)f(y)")
    return out


def brute_force_multiplicative_kannappan(S: Semigroup, z0) -> set[tuple[CycNum, ...]]:
    """Solutions of ``f(xyz0) = f(x)f(y)`` with values in ``{0} u mu_N``.

    Pure grid scan in exponent arithmetic; shares no code with the
    character enumeration.
    """
    z = S.index(z0)
    N = character_conductor(S)
    t = S.table
    grid = [None] + list(range(N))
    found = set()
    trip = [(x, y, t[t[x][y]][z]) for x in S.elements for y in S.elements]
    for f in product(grid, repeat=S.order):
        ok = True
        for x, y, w in trip:
            fx, fy = f[x], f[y]
            rhs = None if fx is None or fy is None else (fx + fy) % N
            if f[w] != rhs:
                ok = False
                break
        if ok:
            found.add(tuple(ZERO if e is None else root_of_unity(N, e) for e in f))
    return found


# ---------------------------------------------------------------------------
# f(x y z0) = chi(z0) [f(x) chi(y) + f(y) chi(x)]

def construct_special_solutions(S: Semigroup, z0, chi: Character, A=None, rho=None) -> CFunc:
    """Piecewise ``f``: ``chi (A + A(z0))`` off I, ``rho`` on P, ``0`` on I\\P."""
    z = S.index(z0)
    if not chi(z):
        raise ValueError("chi(z0) must be nonzero")
    space = rho_space(S, chi)
    rho_vec = space.vector(rho if rho is not None else {})
    if not space.admits(rho_vec):
        raise ValueError("rho violates the admissibility constraints")
    a = [as_cyc(v) for v in A] if A is not None else [ZERO] * S.order
    if len(a) != S.order:
        raise ValueError("A must give one value per element")
    if A is not None:
        out = sorted(chi.outside)
        if any(a[S.table[x][y]] != a[x] + a[y] for x in out for y in out):
            raise ValueError("A is not additive on S \\ I_chi")
    vals = [ZERO] * S.order
    for x in chi.outside:
        vals[x] = chi(x) * (a[x] + a[z])
    for p, v in zip(space.positions, rho_vec):
        vals[p] = v
    return CFunc(tuple(vals), True)


# ---------------------------------------------------------------------------
# Kannappan-sine families

@dataclass
class FamilySolutions:
    S: Semigroup
    z0: int
    witnesses: list[SolutionPair]
    support: dict[str, str]

    def __iter__(self):
        return iter(self.witnesses)

    def __len__(self):
        return len(self.witnesses)

    def __getitem__(self, k):
        return self.witnesses[k]

    def by_family(self, tag: str) -> list[SolutionPair]:
        return [w for w in self.witnesses if w.family == tag]

    def report_lines(self) -> list[str]:
        S = self.S
        lines = []
        for tag in FAMILIES:
            ws = self.by_family(tag)
            lines.append(f"family {tag}: {FAMILY_FORMS[tag]}")
            lines.append(f"  support: {self.support[tag]}")
            lines.append(f"  witnesses: {len(ws)} (all verified exactly)")
            for w in ws:
                lines.append("    " + w.describe(S))
        return lines


def _free_samples(n: int, positions) -> list[tuple[CycNum, ...]]:
    """Indicator samples ``v * delta_p`` plus the all-ones vector on ``positions``."""
    positions = sorted(positions)
    out = []
    for p in positions:
        for v in FREE_VALUES:
            vec = [ZERO] * n
            vec[p] = v
            out.append(tuple(vec))
    if positions:
        vec = [ZERO] * n
        for p in positions:
            vec[p] = ONE
        if tuple(vec) not in out:
            out.append(tuple(vec))
    return out


def _lin(a, u, b=None, v=None):
    if b is None:
        return tuple(a * x for x in u)
    return tuple(a * x + b * y for x, y in zip(u, v))


def enumerate_family_solutions(S: Semigroup, z0, samples: Sequence = DEFAULT_SAMPLES) -> FamilySolutions:
    """Representative exact witnesses for every structurally supported family."""
    ctx = context(S, z0)
    z = ctx.z0
    n = S.order
    samples = [as_cyc(s) for s in samples]
    nonzero_samples = [s for s in samples if s]
    zeros = (ZERO,) * n
    ws: list[SolutionPair] = []
    support: dict[str, str] = {}

    def emit(f, g, tag, /, **params):
        ws.append(SolutionPair(CFunc(tuple(f), True), CFunc(tuple(g), True), tag, params))

    # F1
    for g in _free_samples(n, S.elements):
        emit(zeros, g, "F1", g=g)
    support["F1"] = "always"

    nz = ctx.nonvanishing()
    cd = ctx.chardata

    # F2
    for k in nz:
        chi, c0 = cd[k].chi, cd[k].at_z0
        for b in nonzero_samples:
            emit(_lin(c0 / (2 * b), chi.values), _lin(c0 * HALF, chi.values), "F2", b=b, chi=chi)
    support["F2"] = f"{len(nz)} exponential(s) with chi(z0) != 0" if nz else "none: no exponential with chi(z0) != 0"

    # F3, F4, F5 over unordered pairs
    pairs3, pairs4, pairs5 = [], [], []
    for i, j in combinations(nz, 2):
        c1, c2 = cd[i].at_z0, cd[j].at_z0
        x1, x2 = cd[i].chi.values, cd[j].chi.values
        if c2 == -c1:
            pairs3.append((i, j))
            for d in nonzero_samples:
                emit(_lin(d, x1, d, x2), _lin(c1 * HALF, x1, -c1 * HALF, x2), "F3",
                     delta=d, chi1=cd[i].chi, chi2=cd[j].chi)
        if c2 == c1:
            pairs4.append((i, j))
            for c in nonzero_samples:
                emit(_lin(c, x1, -c, x2), _lin(c1 * HALF, x1, c1 * HALF, x2), "F4",
                     c=c, chi1=cd[i].chi, chi2=cd[j].chi)
        a1, a2 = _lin(c1, x1), _lin(c2, x2)
        if a1 != a2:
            pairs5.append((i, j))
            for gam in nonzero_samples:
                emit(_lin(1 / (2 * gam), a1, -1 / (2 * gam), a2), _lin(HALF, a1, HALF, a2), "F5",
                     gamma=gam, chi1=cd[i].chi, chi2=cd[j].chi)
    for tag, prs, cond in (("F3", pairs3, "chi2(z0) = -chi1(z0) != 0"),
                           ("F4", pairs4, "chi2(z0) = chi1(z0) != 0"),
                           ("F5", pairs5, "chi1(z0), chi2(z0) != 0, chi1(z0)chi1 != chi2(z0)chi2")):
        support[tag] = f"{len(prs)} character pair(s) with {cond}" if prs else f"none: no pair with {cond}"

    # F6
    comp = ctx.complement
    if comp:
        for fz in _free_samples(n, comp):
            emit(fz, zeros, "F6", f_z0={p: fz[p] for p in sorted(comp)})
        support["F6"] = f"S != S^2z0; S \\ S^2z0 = {S.fmt_set(comp)}"
    else:
        support["F6"] = "none: S = S^2z0"

    # F7
    f7_chars = 0
    for k in nz:
        d = cd[k]
        chi, c0, rs = d.chi, d.at_z0, d.rho
        g = _lin(c0, chi.values)
        before = len(ws)
        add = additive_basis(S, chi.outside)
        for a_idx in range(add.dim):
            a = add.as_function(a_idx, n)
            f = construct_special_solutions(S, z, chi, A=a)
            if any(f):
                emit(f.values, g, "F7", chi=chi, A=tuple(a), rho={})
        for b in rs.basis:
            for s in nonzero_samples:
                rho = {p: s * v for p, v in zip(rs.positions, b)}
                f = construct_special_solutions(S, z, chi, rho=rho)
                if any(f):
                    emit(f.values, g, "F7", chi=chi, A=None, rho=rho)
        if len(ws) > before:
            f7_chars += 1
    if f7_chars:
        support["F7"] = f"{f7_chars} exponential(s) with chi(z0) != 0 and a nonzero admissible (A, rho)"
    else:
        support["F7"] = "none beyond f = 0: A = 0 and rho = 0 forced for every chi with chi(z0) != 0"

    for tag in FAMILIES:
        if support[tag].startswith("none"):
            log.info("family %s skipped on %s (z0=%s): %s", tag, S.name or "S", S.labels[z], support[tag])

    for w in ws:
        rep = check_kannappan_sine(S, z, w.f, w.g)
        if not rep.passed:
            raise AssertionError(f"emitted {w.family} witness fails the equation: {w.describe(S)}")
    return FamilySolutions(S, z, ws, support)


# ---------------------------------------------------------------------------
# f(x y z0) = f(x) g(y) - f(y) g(x)

@dataclass
class SubtractionSolutions:
    S: Semigroup
    z0: int
    families: list[str]
    witnesses: list[SolutionPair]

    def __iter__(self):
        return iter(self.witnesses)

    def __len__(self):
        return len(self.witnesses)

    def report_lines(self) -> list[str]:
        lines = []
        for tag in ("SUB1", "SUB2"):
            present = tag in self.families
            lines.append(f"family {tag}: {FAMILY_FORMS[tag]}")
            lines.append(f"  support: {'present' if present else 'none: S = S^2z0'}")
            ws = [w for w in self.witnesses if w.family == tag]
            lines.append(f"  witnesses: {len(ws)} (all verified exactly)")
            for w in ws:
                lines.append("    " + w.describe(self.S))
        return lines


def solve_sine_subtraction(S: Semigroup, z0, samples: Sequence = DEFAULT_SAMPLES) -> SubtractionSolutions:
    z = S.index(z0)
    n = S.order
    zeros = (ZERO,) * n
    ws = [SolutionPair(CFunc(zeros, True), CFunc(g, True), "SUB1", {"g": g})
          for g in _free_samples(n, S.elements)]
    fams = ["SUB1"]
    comp = S.all - S.square_z0(z)
    if comp:
        fams.append("SUB2")
        for fz in _free_samples(n, comp):
            for c in [ZERO] + [as_cyc(s) for s in samples]:
                ws.append(SolutionPair(CFunc(fz, True), CFunc(_lin(c, fz), True), "SUB2",
                                       {"c": c, "f_z0": {p: fz[p] for p in sorted(comp)}}))
    for w in ws:
        if not check_sine_subtraction(S, z, w.f, w.g).passed:
            raise AssertionError(f"emitted {w.family} witness fails the equation: {w.describe(S)}")
    return SubtractionSolutions(S, z, fams, ws)
