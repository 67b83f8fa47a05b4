"""Assign a solution ``(f, g)`` of the Kannappan-sine law to its family.

The decision procedure walks the structure of the solution set:

* ``f = 0``                                  -> F1
* ``{f, g}`` dependent, ``g = 0``             -> F6
* ``{f, g}`` dependent, ``g != 0``            -> F2
* independent, ``f(z0) = 0``                  -> F4, F3, or F7
* independent, ``f(z0) != 0``: recover ``gamma^2`` from
  ``g(xyz0) = g(x)g(y) + gamma^2 f(x)f(y)``, split ``h = g +- gamma f``
  into solutions of ``h(xyz0) = h(x)h(y)`` and match them to
  ``chi(z0) chi``                             -> F5, or F7 if both agree.

The first tag found is the classification.  Independently every family
matcher is run on its own and all hits are listed in ``all_tags``
(families overlap, e.g. F3 and F4 are special cases of F5).
Works exactly on :class:`CycNum` input and with a tolerance on floats.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .cyclotomic import CycNum, ZERO, to_float
from .families import Context, context
from .semigroup import Semigroup
from .verifier import CFunc, as_cfunc, gamma_squared

CLASSIFY_TOL = 1e-8


@dataclass
class Classification:
    tag: str | None
    all_tags: tuple[str, ...] = ()
    params: dict = field(default_factory=dict)

    @property
    def classified(self) -> bool:
        return self.tag is not None

    def __str__(self):
        return self.tag or "unclassified"


class _Ops:
    """Zero tests for one classification call."""

    def __init__(self, exact: bool, tol: float, scale: float):
        self.exact = exact
        self.eps = tol * scale

    def z(self, v) -> bool:
        return (not v) if self.exact else abs(v) <= self.eps

    def vz(self, vec) -> bool:
        return all(self.z(v) for v in vec)

    def close(self, a, b) -> bool:
        return all(self.z(x - y) for x, y in zip(a, b))

    def fit(self, target, basis):
        """``lam`` with ``target = lam * basis``, or None."""
        mags = [abs(to_float(b)) if self.exact else abs(b) for b in basis]
        top = max(mags, default=0.0)
        if top == 0.0 or (not self.exact and top <= self.eps):
            return (ZERO if self.exact else 0j) if self.vz(target) else None
        i = mags.index(top)
        lam = target[i] / basis[i]
        return lam if self.close(target, [lam * b for b in basis]) else None


def _lin(a, u, b=None, v=None):
    if b is None:
        return [a * x for x in u]
    return [a * x + b * y for x, y in zip(u, v)]


class _Classifier:
    def __init__(self, S: Semigroup, z0, f: CFunc, g: CFunc, tol: float, disabled: Iterable[str]):
        if f.exact != g.exact:
            raise ValueError("f and g must both be exact or both numeric")
        self.S = S
        self.ctx: Context = context(S, z0)
        self.z = self.ctx.z0
        self.f, self.g = list(f.values), list(g.values)
        self.exact = f.exact
        scale = 1.0 if f.exact else max([1.0] + [abs(v) for v in self.f + self.g])
        self.ops = _Ops(f.exact, tol, scale)
        self.tol = tol
        self.disabled = frozenset(disabled)
        cd = self.ctx.chardata
        if self.exact:
            self.chi = [list(d.chi.values) for d in cd]
            self.c0 = [d.at_z0 for d in cd]
            self.cons = [d.rho.constraints for d in cd]
        else:
            self.chi = [list(d.numeric) for d in cd]
            self.c0 = [complex(d.at_z0) for d in cd]
            self.cons = [d.numeric_constraints for d in cd]
        self.nz = self.ctx.nonvanishing()
        self.half = _half(f.exact)

    # individual family matchers, each returns params or None ---------------
    def f1(self):
        return {} if self.ops.vz(self.f) else None

    def f6(self):
        o = self.ops
        if o.vz(self.f) or not o.vz(self.g):
            return None
        if not all(o.z(self.f[x]) for x in self.ctx.square_z0):
            return None
        return {"f_z0": {x: self.f[x] for x in sorted(self.ctx.complement)}}

    def f2(self):
        o = self.ops
        if o.vz(self.f):
            return None
        for k in self.nz:
            chi, c0 = self.chi[k], self.c0[k]
            if not o.close(self.g, _lin(c0 * self.half, chi)):
                continue
            lam = o.fit(self.f, chi)
            if lam is not None and not o.z(lam):
                return {"chi": k, "b": c0 / (2 * lam)}
        return None

    def _pairs(self):
        nz = self.nz
        return [(i, j) for a, i in enumerate(nz) for j in nz[a + 1:]]

    def f4(self):
        o = self.ops
        for i, j in self._pairs():
            c1, c2 = self.c0[i], self.c0[j]
            if not o.z(c1 - c2):
                continue
            x1, x2 = self.chi[i], self.chi[j]
            if not o.close(self.g, _lin(c1 * self.half, x1, c1 * self.half, x2)):
                continue
            c = o.fit(self.f, _lin(1, x1, -1, x2))
            if c is not None and not o.z(c):
                return {"chi1": i, "chi2": j, "c": c}
        return None

    def f3(self):
        o = self.ops
        for i, j in self._pairs():
            c1, c2 = self.c0[i], self.c0[j]
            if not o.z(c1 + c2):
                continue
            x1, x2 = self.chi[i], self.chi[j]
            if not o.close(self.g, _lin(c1 * self.half, x1, -c1 * self.half, x2)):
                continue
            d = o.fit(self.f, _lin(1, x1, 1, x2))
            if d is not None and not o.z(d):
                return {"chi1": i, "chi2": j, "delta": d}
        return None

    def f5(self):
        o = self.ops
        for i, j in self._pairs():
            a1, a2 = _lin(self.c0[i], self.chi[i]), _lin(self.c0[j], self.chi[j])
            if o.close(a1, a2):
                continue
            if not o.close(self.g, _lin(self.half, a1, self.half, a2)):
                continue
            lam = o.fit(self.f, _lin(1, a1, -1, a2))
            if lam is not None and not o.z(lam):
                return {"chi1": i, "chi2": j, "gamma": 1 / (2 * lam)}
        return None

    def f7(self, only: Iterable[int] | None = None):
        o = self.ops
        S, t = self.S, self.S.table
        for k in (self.nz if only is None else only):
            d = self.ctx.chardata[k]
            chi, c0 = self.chi[k], self.c0[k]
            if not o.close(self.g, _lin(c0, chi)):
                continue
            outside = sorted(d.chi.outside)
            ratio = {x: self.f[x] / chi[x] for x in outside}
            a0 = ratio[self.z] * self.half
            A = {x: ratio[x] - a0 for x in outside}
            if not all(o.z(A[t[x][y]] - A[x] - A[y]) for x in outside for y in outside):
                continue
            if not all(o.z(self.f[x]) for x in d.chi.null_minus_prime):
                continue
            rho = [self.f[p] for p in d.rho.positions]
            if not all(o.z(sum((c * r for c, r in zip(row, rho)), ZERO if self.exact else 0j))
                       for row in self.cons[k]):
                continue
            return {"chi": k, "A": A, "rho": dict(zip(d.rho.positions, rho))}
        return None

    # structured decision -----------------------------------------------------
    def _run(self, tag, fn, *args):
        if tag in self.disabled:
            return None
        return fn(*args)

    def decide(self):
        o = self.ops
        if o.vz(self.f):
            return ("F1", {}) if "F1" not in self.disabled else (None, {})
        b = o.fit(self.g, self.f)
        if b is not None:
            if o.z(b):
                p = self._run("F6", self.f6)
                return ("F6", p) if p is not None else (None, {})
            p = self._run("F2", self.f2)
            return ("F2", p) if p is not None else (None, {})
        if o.z(self.f[self.z]):
            for tag, fn in (("F4", self.f4), ("F3", self.f3), ("F7", self.f7)):
                p = self._run(tag, fn)
                if p is not None:
                    return tag, p
            return None, {}
        return self._split_branch()

    def _split_branch(self):
        """``f(z0) != 0``: decompose ``g +- gamma f`` into exponential pieces."""
        o = self.ops
        S, z = self.S, self.z
        fz = CFunc(tuple(self.f), self.exact)
        gz = CFunc(tuple(self.g), self.exact)
        gsq, _ = gamma_squared(S, z, fz, gz)
        for k in self.nz:
            target = _lin(self.c0[k], self.chi[k])
            tt = (target[z] - self.g[z]) / self.f[z]
            if not o.z(tt * tt - gsq):
                continue
            h_plus = _lin(1, self.g, tt, self.f)
            if not o.close(h_plus, target):
                continue
            h_minus = _lin(1, self.g, -tt, self.f)
            for j in self.nz:
                if not o.close(h_minus, _lin(self.c0[j], self.chi[j])):
                    continue
                if j != k and not o.z(tt) and "F5" not in self.disabled:
                    i1, i2 = (k, j) if k < j else (j, k)
                    gam = tt if k < j else -tt
                    return "F5", {"chi1": i1, "chi2": i2, "gamma": gam, "gamma_sq": gsq}
                if j == k and "F7" not in self.disabled:
                    p = self.f7(only=[k])
                    if p is not None:
                        return "F7", p
        return None, {}

    def all_tags(self):
        found = []
        for tag, fn in (("F1", self.f1), ("F6", self.f6), ("F2", self.f2), ("F4", self.f4),
                        ("F3", self.f3), ("F5", self.f5), ("F7", self.f7)):
            if tag not in self.disabled and fn() is not None:
                found.append(tag)
        return tuple(found)


def _half(exact: bool):
    return CycNum(Fraction(1, 2)) if exact else 0.5


def classify_solution(S: Semigroup, z0, f, g, tol: float = CLASSIFY_TOL,
                      disabled: Iterable[str] = ()) -> Classification:
    """Family tag of a solution (``tag is None`` means unclassified).

    ``disabled`` removes families from the classifier; used by ablation
    runs to show the completeness check can fail.
    """
    f, g = as_cfunc(f, S.order), as_cfunc(g, S.order)
    c = _Classifier(S, z0, f, g, tol, disabled)
    tag, params = c.decide()
    return Classification(tag, c.all_tags(), params)


def classify_subtraction(S: Semigroup, z0, f, g, tol: float = CLASSIFY_TOL) -> Classification:
    """SUB1 (``f = 0``) or SUB2 (``g = c f``, ``f = 0`` on ``S^2 z0``)."""
    f, g = as_cfunc(f, S.order), as_cfunc(g, S.order)
    ctx = context(S, z0)
    scale = 1.0 if f.exact else max([1.0] + [abs(v) for v in f.values + g.values])
    o = _Ops(f.exact, tol, scale)
    if o.vz(f.values):
        return Classification("SUB1", ("SUB1",), {})
    c = o.fit(list(g.values), list(f.values))
    if c is not None and all(o.z(f[x]) for x in ctx.square_z0):
        return Classification("SUB2", ("SUB2",), {"c": c})
    return Classification(None, (), {})
