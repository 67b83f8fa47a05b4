"""Exhaustive checks of the functional equations and the identities their
solutions must satisfy, on concrete ``(S, z0, f, g)``.

Every check works in two modes: *exact* (values are :class:`CycNum`,
comparisons are equalities) and *numeric* (complex floats compared with
an absolute tolerance).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .cyclotomic import CycNum, ZERO, as_cyc, to_float
from .semigroup import Semigroup


@dataclass(frozen=True)
class CFunc:
    """A total function S -> C stored as its value vector."""

    values: tuple
    exact: bool

    @classmethod
    def of(cls, values, exact: bool | None = None) -> CFunc:
        if isinstance(values, CFunc):
            if exact is None or exact == values.exact:
                return values
            values = values.values
        vals = list(values)
        if exact is None:
            exact = all(isinstance(v, (CycNum, int, Fraction)) for v in vals)
        if exact:
            return cls(tuple(as_cyc(v) for v in vals), True)
        return cls(tuple(complex(to_float(v) if isinstance(v, CycNum) else v) for v in vals), False)

    @classmethod
    def zeros(cls, n: int, exact: bool = True) -> CFunc:
        return cls((ZERO,) * n, True) if exact else cls((0j,) * n, False)

    def __getitem__(self, i):
        return self.values[i]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def numeric(self) -> CFunc:
        return self if not self.exact else CFunc(tuple(to_float(v) for v in self.values), False)

    def array(self) -> np.ndarray:
        return np.array([to_float(v) for v in self.values], dtype=complex)

    def is_zero(self, tol: float = 0.0) -> bool:
        if self.exact:
            return not any(self.values)
        return max((abs(v) for v in self.values), default=0.0) <= tol

    def __str__(self):
        if self.exact:
            return "(" + ", ".join(str(v) for v in self.values) + ")"
        return "(" + ", ".join(_fmt_complex(v) for v in self.values) + ")"

    def scale(self, c) -> CFunc:
        return CFunc(tuple(c * v for v in self.values), self.exact)

    def __add__(self, other: CFunc) -> CFunc:
        return CFunc(tuple(a + b for a, b in zip(self.values, other.values)), self.exact and other.exact)

    def __sub__(self, other: CFunc) -> CFunc:
        return CFunc(tuple(a - b for a, b in zip(self.values, other.values)), self.exact and other.exact)


def _fmt_complex(v: complex) -> str:
    return f"{v.real:.12g}{v.imag:+.12g}j"


def as_cfunc(v, n: int | None = None) -> CFunc:
    out = CFunc.of(v)
    if n is not None and len(out) != n:
        raise ValueError(f"function has {len(out)} values, semigroup has {n} elements")
    return out


def _pair(S: Semigroup, f, g) -> tuple[CFunc, CFunc]:
    f, g = as_cfunc(f, S.order), as_cfunc(g, S.order)
    if f.exact != g.exact:
        raise ValueError("f and g must both be exact or both numeric")
    return f, g


@dataclass
class CheckReport:
    equation: str
    passed: bool
    violations: list = field(default_factory=list)
    max_residual: float = 0.0
    info: dict = field(default_factory=dict)

    def __bool__(self):
        return self.passed

    def lines(self, S: Semigroup | None = None, limit: int = 20) -> list[str]:
        out = [f"check: {self.equation}", f"pass: {'yes' if self.passed else 'no'}",
               f"max_residual: {self.max_residual:.3e}"]
        for k, v in self.info.items():
            out.append(f"{k}: {v}")
        if self.violations:
            out.append(f"violations: {len(self.violations)}")
            for viol in self.violations[:limit]:
                x, y, lhs, rhs = viol
                if S is not None and isinstance(x, int) and isinstance(y, int):
                    x, y = S.labels[x], S.labels[y]
                out.append(f"  ({x}, {y}): lhs={lhs} rhs={rhs}")
        return out


def _compare(name: str, rows: Iterable[tuple], exact: bool, tol: float, info=None) -> CheckReport:
    violations = []
    worst = 0.0
    for x, y, lhs, rhs in rows:
        if exact:
            if lhs != rhs:
                violations.append((x, y, lhs, rhs))
                worst = max(worst, abs(to_float(lhs - rhs)))
        else:
            res = abs(lhs - rhs)
            worst = max(worst, res)
            if res > tol:
                violations.append((x, y, lhs, rhs))
    return CheckReport(name, not violations, violations, worst, dict(info or {}))


DEFAULT_TOL = 1e-12


def check_kannappan_sine(S: Semigroup, z0, f, g, tol: float = DEFAULT_TOL) -> CheckReport:
    """``f(x y z0) = f(x) g(y) + f(y) g(x)`` on all pairs."""
    f, g = _pair(S, f, g)
    z = S.index(z0)
    t = S.table
    rows = ((x, y, f[t[t[x][y]][z]], f[x] * g[y] + f[y] * g[x])
            for x in S.elements for y in S.elements)
    return _compare("kannappan-sine", rows, f.exact, tol)


def check_sine_subtraction(S: Semigroup, z0, f, g, tol: float = DEFAULT_TOL) -> CheckReport:
    """``f(x y z0) = f(x) g(y) - f(y) g(x)`` on all pairs."""
    f, g = _pair(S, f, g)
    z = S.index(z0)
    t = S.table
    rows = ((x, y, f[t[t[x][y]][z]], f[x] * g[y] - f[y] * g[x])
            for x in S.elements for y in S.elements)
    return _compare("sine-subtraction", rows, f.exact, tol)


def check_multiplicative_kannappan(S: Semigroup, z0, f, tol: float = DEFAULT_TOL) -> CheckReport:
    """``f(x y z0) = f(x) f(y)`` on all pairs."""
    f = as_cfunc(f, S.order)
    z = S.index(z0)
    t = S.table
    rows = ((x, y, f[t[t[x][y]][z]], f[x] * f[y]) for x in S.elements for y in S.elements)
    return _compare("mult-kannappan", rows, f.exact, tol)


def check_additive_kannappan(S: Semigroup, z0, f, tol: float = DEFAULT_TOL) -> CheckReport:
    f = as_cfunc(f, S.order)
    z = S.index(z0)
    rows = ((x, y, f[S.mul(x, y, z)], f[x] + f[y]) for x in S.elements for y in S.elements)
    return _compare("additive-kannappan", rows, f.exact, tol)


def _zero(v, exact: bool, tol: float) -> bool:
    return (not v) if exact else abs(v) <= tol


def _require_solution(S, z0, f, g, tol):
    rep = check_kannappan_sine(S, z0, f, g, tol)
    if not rep.passed:
        raise ValueError("precondition violated: (f, g) does not solve f(xyz0) = f(x)g(y) + f(y)g(x)")


def gamma_squared(S: Semigroup, z0, f, g, tol: float = DEFAULT_TOL):
    """Recover ``gamma^2`` in ``g(xyz0) = g(x)g(y) + gamma^2 f(x)f(y)``.

    The pivot is the first pair in row-major order with ``f(x)f(y) != 0``
    (numerically: the first whose modulus reaches half the largest one).
    Returns ``(gamma_sq, pivot)``; requires ``f(z0) != 0``.
    """
    f, g = _pair(S, f, g)
    z = S.index(z0)
    pairs = [(x, y) for x in S.elements for y in S.elements]
    if f.exact:
        pivot = next(((x, y) for x, y in pairs if f[x] * f[y]), None)
    else:
        top = max(abs(f[x] * f[y]) for x, y in pairs)
        pivot = next(((x, y) for x, y in pairs if top > 0 and abs(f[x] * f[y]) >= 0.5 * top), None)
    if pivot is None:
        raise ValueError("f vanishes identically; gamma^2 undefined")
    x, y = pivot
    gsq = (g[S.mul(x, y, z)] - g[x] * g[y]) / (f[x] * f[y])
    return gsq, pivot


def check_branch_identity(S: Semigroup, z0, f, g, tol: float = DEFAULT_TOL) -> CheckReport:
    """Identities every solution satisfies, split on whether ``f(z0) = 0``.

    ``f(z0) = 0``:  g(z0^2) f(xy) = g(z0)[f(x)g(y) + f(y)g(x)] - f(z0^2) g(xy).
    ``f(z0) != 0``: g(xyz0) = g(x)g(y) + gamma^2 f(x)f(y) for one constant.
    """
    f, g = _pair(S, f, g)
    _require_solution(S, z0, f, g, tol)
    z = S.index(z0)
    zz = S.mul(z, z)
    t = S.table
    if _zero(f[z], f.exact, tol):
        rows = ((x, y, g[zz] * f[t[x][y]],
                 g[z] * (f[x] * g[y] + f[y] * g[x]) - f[zz] * g[t[x][y]])
                for x in S.elements for y in S.elements)
        return _compare("branch-identity(f(z0)=0)", rows, f.exact, tol, {"branch": "f(z0)=0"})
    gsq, pivot = gamma_squared(S, z0, f, g, tol)
    rows = ((x, y, g[S.mul(x, y, z)], g[x] * g[y] + gsq * f[x] * f[y])
            for x in S.elements for y in S.elements)
    return _compare("branch-identity(f(z0)!=0)", rows, f.exact, tol,
                    {"branch": "f(z0)!=0", "gamma_sq": gsq, "pivot": (S.labels[pivot[0]], S.labels[pivot[1]])})


def _independent(f: CFunc, g: CFunc, tol: float) -> bool:
    if f.exact:
        return linalg.rank([list(f.values), list(g.values)]) == 2
    return np.linalg.matrix_rank(np.array([f.values, g.values]), tol=tol) == 2


def check_independence_consequences(S: Semigroup, z0, f, g, tol: float = DEFAULT_TOL) -> CheckReport:
    """Implications for solutions with ``f != 0`` and ``f(z0) = 0``.

    (i)      f(z0^2) != 0  =>  g(z0^2) = 0
    (ii)(a)  {f, g} independent  =>  g(z0) != 0
    (ii)(b)  independent and f(z0^2) = 0  =>  g(z0^2) != 0
    Outside the hypothesis the check passes vacuously.
    """
    f, g = _pair(S, f, g)
    _require_solution(S, z0, f, g, tol)
    z = S.index(z0)
    zz = S.mul(z, z)
    ex = f.exact
    info = {"independent": _independent(f, g, tol), "applied": []}
    violations = []
    if f.is_zero(tol) or not _zero(f[z], ex, tol):
        info["applied"] = "none (hypothesis f != 0, f(z0) = 0 not met)"
        return CheckReport("independence-consequences", True, [], 0.0, info)
    applied = []
    if not _zero(f[zz], ex, tol):
        applied.append("i")
        if not _zero(g[zz], ex, tol):
            violations.append(("i", "g(z0^2)", g[zz], 0))
    if info["independent"]:
        applied.append("ii-a")
        if _zero(g[z], ex, tol):
            violations.append(("ii-a", "g(z0)", g[z], "nonzero"))
        if _zero(f[zz], ex, tol):
            applied.append("ii-b")
            if _zero(g[zz], ex, tol):
                violations.append(("ii-b", "g(z0^2)", g[zz], "nonzero"))
    info["applied"] = applied
    return CheckReport("independence-consequences", not violations, violations, 0.0, info)


def check_centrality(S: Semigroup, f, chi=None, ternary: bool = False,
                     tol: float = DEFAULT_TOL) -> CheckReport:
    """``f(xy) = f(yx)``; optionally ``f(xyu) = f(xuy)`` and, given a
    character, ``f(xy) = f(yx) = 0`` for x in I\\P and y outside I."""
    f = as_cfunc(f, S.order)
    t = S.table
    rows = [(x, y, f[t[x][y]], f[t[y][x]]) for x in S.elements for y in S.elements]
    report = _compare("central", rows, f.exact, tol)
    if ternary:
        rows3 = [((x, y, u), "xuy", f[t[t[x][y]][u]], f[t[t[x][u]][y]])
                 for x in S.elements for y in S.elements for u in S.elements]
        tern = _compare("ternary", rows3, f.exact, tol)
        report.violations += tern.violations
        report.max_residual = max(report.max_residual, tern.max_residual)
    if chi is not None:
        zero = ZERO if f.exact else 0j
        rows1 = []
        for x in sorted(chi.null_minus_prime):
            for y in sorted(chi.outside):
                rows1.append((x, y, f[t[x][y]], zero))
                rows1.append((y, x, f[t[y][x]], zero))
        cond = _compare("condition-I", rows1, f.exact, tol)
        report.violations += cond.violations
        report.max_residual = max(report.max_residual, cond.max_residual)
    report.passed = not report.violations
    return report


@dataclass
class RankReport:
    rank: int
    size: int
    full: bool

    def __bool__(self):
        return self.full


def check_independence(vectors: Sequence, restrict: Iterable[int] | None = None,
                       tol: float = 1e-9) -> RankReport:
    """Rank of a family of functions, optionally restricted to a subset."""
    vecs = [as_cfunc(v) for v in vectors]
    if not vecs:
        return RankReport(0, 0, True)
    idx = sorted(restrict) if restrict is not None else range(len(vecs[0]))
    rows = [[v[i] for i in idx] for v in vecs]
    if all(v.exact for v in vecs):
        r = linalg.rank(rows) if idx else 0
    else:
        arr = np.array([[to_float(x) for x in row] for row in rows], dtype=complex)
        r = int(np.linalg.matrix_rank(arr, tol=tol)) if len(idx) else 0
    return RankReport(r, len(vecs), r == len(vecs))


def check_character_independence(chars) -> RankReport:
    """Distinct exponentials are linearly independent."""
    return check_independence([list(chi.values) for chi in chars])


def check_additive_character_pair(S: Semigroup, chi, A) -> RankReport:
    """``{chi*A, chi}`` independent on ``S \\ I_chi`` when A is nonzero there."""
    out = sorted(chi.outside)
    chiA = [chi.values[x] * as_cyc(A[x]) if x in chi.outside else ZERO for x in S.elements]
    return check_independence([chiA, list(chi.values)], restrict=out)
