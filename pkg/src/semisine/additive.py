"""Additive maps and the additive Kannappan equation f(xyz0) = f(x) + f(y).

The linear systems here have rational coefficients, so solving over Q
is enough: a complex solution is a pair of rational-space solutions.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from . import linalg
from .semigroup import ElementSet, Semigroup, SemigroupError

_Z, _O = Fraction(0), Fraction(1)


@dataclass(frozen=True)
class AdditiveSpace:
    domain: tuple[int, ...]
    basis: tuple[tuple[Fraction, ...], ...]   # values on ``domain``, in order

    @property
    def dim(self) -> int:
        return len(self.basis)

    def as_function(self, k: int, order: int) -> list[Fraction]:
        """Basis vector ``k`` extended by zero to all of S."""
        out = [_Z] * order
        for x, v in zip(self.domain, self.basis[k]):
            out[x] = v
        return out


def additive_basis(S: Semigroup, domain: Iterable[int] | None = None) -> AdditiveSpace:
    """Nullspace of ``A(xy) - A(x) - A(y) = 0`` over ``x, y`` in ``domain``."""
    dom = tuple(sorted(S.all if domain is None else set(domain)))
    if not S.is_closed(dom):
        raise SemigroupError(f"domain {S.fmt_set(dom)} is not closed under the product")
    pos = {x: k for k, x in enumerate(dom)}
    rows = []
    for x in dom:
        for y in dom:
            row = [_Z] * len(dom)
            row[pos[S.table[x][y]]] += 1
            row[pos[x]] -= 1
            row[pos[y]] -= 1
            rows.append(row)
    basis = linalg.nullspace(rows, len(dom), _Z, _O)
    return AdditiveSpace(dom, tuple(tuple(v) for v in basis))


def kannappan_additive_system(S: Semigroup, z0: int | str) -> list[list[Fraction]]:
    """Rows of ``f(xyz0) - f(x) - f(y) = 0`` for all x, y."""
    z = S.index(z0)
    rows = []
    for x in S.elements:
        for y in S.elements:
            row = [_Z] * S.order
            row[S.mul(x, y, z)] += 1
            row[x] -= 1
            row[y] -= 1
            rows.append(row)
    return rows


def kannappan_additive_nullspace(S: Semigroup, z0: int | str) -> list[list[Fraction]]:
    return linalg.nullspace(kannappan_additive_system(S, z0), S.order, _Z, _O)


class OracleMismatch(AssertionError):
    pass


def solve_kannappan_additive(S: Semigroup, z0: int | str) -> list[list[Fraction]]:
    """Basis of all solutions of ``f(xyz0) = f(x) + f(y)``.

    Solutions are ``A + A(z0)`` for additive ``A`` on S.  The result is
    cross-checked against a direct solve of the equation's own linear
    system; an empty list means the only solution is ``f = 0``.
    """
    z = S.index(z0)
    space = additive_basis(S)
    formula = []
    for k in range(space.dim):
        a = space.as_function(k, S.order)
        formula.append([v + a[z] for v in a])
    direct = kannappan_additive_nullspace(S, z)
    if not linalg.same_span(formula, direct):
        raise OracleMismatch("additive formula and direct nullspace disagree")
    return formula


def shift_identity_holds(S: Semigroup, z0: int | str, f) -> bool:
    """``f(xy) = f(x) + f(y) + [f(z0) - f(z0^2)]`` for all x, y."""
    z = S.index(z0)
    shift = f[z] - f[S.mul(z, z)]
    return all(f[S.mul(x, y)] == f[x] + f[y] + shift for x in S.elements for y in S.elements)
