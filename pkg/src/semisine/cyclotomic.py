"""Exact arithmetic in cyclotomic fields Q(zeta_N).

A :class:`CycNum` stores its conductor ``N`` together with rational
coordinates in the power basis ``1, z, ..., z^(phi(N)-1)`` of Q(zeta_N),
where ``z = exp(2*pi*i/N)``.  Every value is kept at its *minimal*
conductor, so two equal numbers always share one representation and
``==``/``hash`` are structural.
"""
from __future__ import annotations

import cmath
import math
import re
from fractions import Fraction
from functools import lru_cache, reduce
from numbers import Rational
from typing import Iterable, Union

Scalar = Union["CycNum", int, Fraction]


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    # x^n - 1 = prod_{d | n} Phi_d(x)
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divexact(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(out) - 1, -1, -1):
        q = num[i + len(den) - 1] // lead
        out[i] = q
        for j, c in enumerate(den):
            num[i + j] -= q * c
    assert all(c == 0 for c in num[: len(den) - 1])
    return out


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Coordinates of z^k (0 <= k < n) in the power basis of Q(zeta_n)."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    rows = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(n):
        rows.append(tuple(cur))
        # multiply by z and reduce with the monic relation Phi_n(z) = 0
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for j in range(deg):
                cur[j] -= top * phi[j]
    return tuple(rows)


def _reduce(terms: dict[int, Fraction], n: int) -> tuple[Fraction, ...]:
    table = _power_table(n)
    out = [Fraction(0)] * totient(n)
    for k, c in terms.items():
        if c:
            row = table[k % n]
            for j, t in enumerate(row):
                if t:
                    out[j] += c * t
    return tuple(out)


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def _subfield_projector(d: int, n: int):
    """Data for testing membership of Q(zeta_n)-coordinates in Q(zeta_d).

    Returns ``(rows, inverse, embed)``: ``embed`` holds the coordinates of
    the images of the d-power basis, ``rows`` a set of pivot coordinates
    and ``inverse`` the inverse of the square pivot block.
    """
    step = n // d
    table = _power_table(n)
    embed = [table[(step * j) % n] for j in range(totient(d))]
    # matrix with columns = embedded basis vectors; shape phi(n) x phi(d)
    m = [[Fraction(embed[j][i]) for j in range(len(embed))] for i in range(totient(n))]
    rows = []
    basis_rows = []
    for i, r in enumerate(m):
        v = list(r)
        for (pr, pc, pv) in basis_rows:
            if v[pc]:
                fac = v[pc] / pv[pc]
                v = [a - fac * b for a, b in zip(v, pv)]
        nz = [c for c, a in enumerate(v) if a]
        if nz:
            basis_rows.append((i, nz[0], v))
            rows.append(i)
        if len(rows) == len(embed):
            break
    block = [m[i] for i in rows]
    inverse = _invert(block)
    return tuple(rows), inverse, embed


def _invert(a: list[list[Fraction]]) -> list[list[Fraction]]:
    k = len(a)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(k)] for i, row in enumerate(a)]
    for col in range(k):
        piv = next(r for r in range(col, k) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(k):
            if r != col and aug[r][col]:
                fac = aug[r][col]
                aug[r] = [x - fac * y for x, y in zip(aug[r], aug[col])]
    return [row[k:] for row in aug]


def _minimize(n: int, coeffs: tuple[Fraction, ...]) -> tuple[int, tuple[Fraction, ...]]:
    if n == 1 or not any(coeffs[1:]):
        return 1, (coeffs[0],)
    for d in _divisors(n):
        if d == n:
            break
        if d % 4 == 2:
            # Q(zeta_d) = Q(zeta_{d/2}); already tried
            continue
        rows, inverse, embed = _subfield_projector(d, n)
        sub = [coeffs[i] for i in rows]
        c = [sum((inverse[i][j] * sub[j] for j in range(len(sub))), Fraction(0))
             for i in range(len(sub))]
        back = [Fraction(0)] * len(coeffs)
        for j, cj in enumerate(c):
            if cj:
                for i, t in enumerate(embed[j]):
                    if t:
                        back[i] += cj * t
        if tuple(back) == coeffs:
            return d, tuple(c)
    return n, coeffs


class CycNum:
    """An exact element of a cyclotomic field (immutable)."""

    __slots__ = ("_n", "_c", "_hash")

    def __init__(self, value: Scalar = 0):
        if isinstance(value, CycNum):
            self._n, self._c = value._n, value._c
        elif isinstance(value, (int, Fraction, Rational)):
            self._n, self._c = 1, (Fraction(value),)
        else:
            raise TypeError(f"cannot build CycNum from {type(value).__name__}")
        self._hash = None

    @classmethod
    def _raw(cls, n: int, coeffs: tuple[Fraction, ...]) -> CycNum:
        obj = cls.__new__(cls)
        obj._n, obj._c = _minimize(n, coeffs)
        obj._hash = None
        return obj

    @classmethod
    def from_terms(cls, n: int, terms: dict[int, Scalar]) -> CycNum:
        """Build ``sum c_k z_n^k`` from a mapping ``k -> c_k`` of rationals."""
        return cls._raw(n, _reduce({k: Fraction(c) for k, c in terms.items()}, n))

    @property
    def conductor(self) -> int:
        return self._n

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._c

    def is_rational(self) -> bool:
        return self._n == 1

    def _terms_at(self, m: int) -> dict[int, Fraction]:
        step = m // self._n
        return {k * step: c for k, c in enumerate(self._c) if c}

    def _coerce(self, other) -> CycNum | None:
        if isinstance(other, CycNum):
            return other
        if isinstance(other, (int, Fraction)):
            return CycNum(other)
        return None

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self._n == o._n:
            return CycNum._raw(self._n, tuple(a + b for a, b in zip(self._c, o._c)))
        m = _lcm(self._n, o._n)
        terms = self._terms_at(m)
        for k, c in o._terms_at(m).items():
            terms[k] = terms.get(k, 0) + c
        return CycNum._raw(m, _reduce(terms, m))

    __radd__ = __add__

    def __neg__(self):
        obj = CycNum.__new__(CycNum)
        obj._n, obj._c, obj._hash = self._n, tuple(-a for a in self._c), None
        return obj

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o._n == 1:
            s = o._c[0]
            obj = CycNum.__new__(CycNum)
            obj._n, obj._hash = self._n, None
            obj._c = tuple(a * s for a in self._c) if s else (Fraction(0),)
            if not s:
                obj._n = 1
            return obj
        if self._n == 1:
            return o * self
        m = _lcm(self._n, o._n)
        a, b = self._terms_at(m), o._terms_at(m)
        terms: dict[int, Fraction] = {}
        for i, x in a.items():
            for j, y in b.items():
                k = (i + j) % m
                terms[k] = terms.get(k, 0) + x * y
        return CycNum._raw(m, _reduce(terms, m))

    __rmul__ = __mul__

    def galois(self, k: int) -> CycNum:
        """Image under the automorphism z -> z^k (k coprime to the conductor)."""
        n = self._n
        if math.gcd(k, n) != 1:
            raise ValueError(f"{k} is not coprime to conductor {n}")
        return CycNum._raw(n, _reduce({(j * k) % n: c for j, c in enumerate(self._c) if c}, n))

    def conjugate(self) -> CycNum:
        return self.galois(-1 % self._n) if self._n > 1 else self

    def inverse(self) -> CycNum:
        if not self:
            raise ZeroDivisionError("CycNum division by zero")
        if self._n == 1:
            return CycNum(1 / self._c[0])
        n = self._n
        others = [self.galois(k) for k in range(2, n) if math.gcd(k, n) == 1]
        prod = reduce(lambda x, y: x * y, others, CycNum(1))
        norm = self * prod
        assert norm.is_rational()
        return prod * (1 / norm._c[0])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        out, base = CycNum(1), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # comparison / hashing -------------------------------------------------
    def __bool__(self):
        return any(self._c)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._n == o._n and self._c == o._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._c[0]) if self._n == 1 else hash((self._n, self._c))
        return self._hash

    # conversion -----------------------------------------------------------
    def __complex__(self):
        return to_float(self)

    def __repr__(self):
        return f"CycNum({str(self)!r})"

    def __str__(self):
        parts = []
        for k, c in enumerate(self._c):
            if not c:
                continue
            if k == 0:
                body = str(abs(c))
            elif abs(c) == 1:
                body = f"z_{self._n}^{k}"
            else:
                body = f"{abs(c)}*z_{self._n}^{k}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        if not parts:
            return "0"
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


ZERO = CycNum(0)
ONE = CycNum(1)


def root_of_unity(n: int, k: int = 1) -> CycNum:
    """Return zeta_n^k in canonical form."""
    if n < 1:
        raise ValueError("root_of_unity needs n >= 1")
    return CycNum._raw(n, _reduce({k % n: Fraction(1)}, n))


def to_float(a: Scalar) -> complex:
    """Numeric embedding with z_N -> exp(2*pi*i/N)."""
    if not isinstance(a, CycNum):
        return complex(a)
    n = a.conductor
    if n == 1:
        return complex(float(a.coeffs[0]))
    re_, im_ = 0.0, 0.0
    for k, c in enumerate(a.coeffs):
        if c:
            w = cmath.exp(2j * math.pi * k / n)
            re_ += float(c) * w.real
            im_ += float(c) * w.imag
    return complex(re_, im_)


def as_cyc(x: Scalar) -> CycNum:
    return x if isinstance(x, CycNum) else CycNum(x)


_TERM = re.compile(
    r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*?\s*)?(?:z_(\d+)\^(-?\d+)|z_(\d+))?\s*"
)


def parse_cycnum(text: str) -> CycNum:
    """Parse the report string form, e.g. ``"1/2 - 1/2*z_4^1"``."""
    s = text.strip()
    if not s:
        raise ValueError("empty CycNum literal")
    total = ZERO
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"bad CycNum literal: {text!r}")
        sign, coeff, n1, k1, n2 = m.groups()
        if sign is None and not first:
            raise ValueError(f"bad CycNum literal: {text!r}")
        if coeff is None and n1 is None and n2 is None:
            raise ValueError(f"bad CycNum literal: {text!r}")
        c = Fraction(coeff) if coeff is not None else Fraction(1)
        if sign == "-":
            c = -c
        if n1 is not None:
            term = root_of_unity(int(n1), int(k1)) * c
        elif n2 is not None:
            term = root_of_unity(int(n2), 1) * c
        else:
            term = CycNum(c)
        total = total + term
        pos = m.end()
        first = False
    return total


def common_conductor(values: Iterable[CycNum]) -> int:
    return reduce(_lcm, (as_cyc(v).conductor for v in values), 1)
