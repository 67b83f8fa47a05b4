"""Finite semigroups given by Cayley tables."""
from __future__ import annotations

import json
from itertools import permutations, product
from pathlib import Path
from typing import Iterable, Sequence

ElementSet = frozenset  # frozenset[int] of element indices


class SemigroupError(ValueError):
    pass


class AssociativityError(SemigroupError):
    def __init__(self, triple: tuple[int, int, int], labels: Sequence[str] | None = None):
        self.triple = triple
        i, j, k = triple
        if labels is not None:
            i, j, k = labels[i], labels[j], labels[k]
        super().__init__(f"associativity fails at ({i}, {j}, {k})")


def find_nonassociative(table: Sequence[Sequence[int]]):
    n = len(table)
    for i, j, k in product(range(n), repeat=3):
        if table[table[i][j]][k] != table[i][table[j][k]]:
            return (i, j, k)
    return None


class Semigroup:
    """Immutable finite semigroup; ``table[i][j]`` is the index of ``x_i x_j``."""

    def __init__(self, labels: Sequence[str], table: Sequence[Sequence[int]], name: str = ""):
        labels = tuple(str(x) for x in labels)
        n = len(labels)
        if n == 0:
            raise SemigroupError("a semigroup needs at least one element")
        if len(set(labels)) != n:
            raise SemigroupError("element labels must be distinct")
        if any(len(lab.split()) != 1 for lab in labels):
            raise SemigroupError("labels may not contain whitespace")
        if len(table) != n or any(len(row) != n for row in table):
            raise SemigroupError(f"table must be {n}x{n}")
        tab = tuple(tuple(int(v) for v in row) for row in table)
        if any(not 0 <= v < n for row in tab for v in row):
            raise SemigroupError("table entries out of range")
        bad = find_nonassociative(tab)
        if bad is not None:
            raise AssociativityError(bad, labels)
        self.labels = labels
        self.table = tab
        self.name = name
        self._index = {lab: i for i, lab in enumerate(labels)}

    @property
    def order(self) -> int:
        return len(self.labels)

    def __len__(self):
        return len(self.labels)

    @property
    def elements(self) -> range:
        return range(len(self.labels))

    @property
    def all(self) -> ElementSet:
        return frozenset(self.elements)

    def __repr__(self):
        tag = f" {self.name}" if self.name else ""
        return f"<Semigroup{tag} order={self.order}>"

    def __eq__(self, other):
        return isinstance(other, Semigroup) and (self.labels, self.table) == (other.labels, other.table)

    def __hash__(self):
        return hash((self.labels, self.table))

    def index(self, x: int | str) -> int:
        """Element index from an index or a label."""
        if isinstance(x, str):
            try:
                return self._index[x]
            except KeyError:
                raise SemigroupError(f"unknown element label {x!r}") from None
        if not 0 <= x < self.order:
            raise SemigroupError(f"element index {x} out of range")
        return int(x)

    def mul(self, *xs: int) -> int:
        out = xs[0]
        for x in xs[1:]:
            out = self.table[out][x]
        return out

    def is_commutative(self) -> bool:
        t = self.table
        return all(t[i][j] == t[j][i] for i in self.elements for j in self.elements)

    def identity(self) -> int | None:
        n, t = self.order, self.table
        for e in range(n):
            if all(t[e][x] == x == t[x][e] for x in range(n)):
                return e
        return None

    def index_period(self, x: int) -> tuple[int, int]:
        """``(m, r)`` with ``x^m = x^(m+r)`` minimal."""
        seen = {}
        p, k = x, 1
        while p not in seen:
            seen[p] = k
            p = self.table[p][x]
            k += 1
        m = seen[p]
        return m, k - m

    def period(self, x: int) -> int:
        return self.index_period(x)[1]

    def product_set(self, t: Iterable[int], u: Iterable[int]) -> ElementSet:
        return product_set(self, t, u)

    def square_z0(self, z0: int | str) -> ElementSet:
        """``S^2 z0 = {x y z0 : x, y in S}``."""
        z = self.index(z0)
        sq = product_set(self, self.all, self.all)
        return product_set(self, sq, [z])

    def is_closed(self, dom: Iterable[int]) -> bool:
        d = set(dom)
        return all(self.table[a][b] in d for a in d for b in d)

    def fmt_set(self, s: Iterable[int]) -> str:
        return "{" + ", ".join(self.labels[i] for i in sorted(s)) + "}"

    # serialization --------------------------------------------------------
    def to_text(self) -> str:
        lines = [str(self.order), " ".join(self.labels)]
        for row in self.table:
            lines.append(" ".join(self.labels[v] for v in row))
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        rows = [[self.labels[v] for v in row] for row in self.table]
        return json.dumps({"labels": list(self.labels), "table": rows})


def product_set(S: Semigroup, t: Iterable[int], u: Iterable[int]) -> ElementSet:
    u = list(u)
    return frozenset(S.table[a][b] for a in t for b in u)


# parsing ------------------------------------------------------------------

def _table_from_labels(labels: Sequence[str], rows) -> list[list[int]]:
    idx = {lab: i for i, lab in enumerate(labels)}
    out = []
    for row in rows:
        r = []
        for v in row:
            if isinstance(v, int) and not isinstance(v, bool):
                r.append(v)
            elif str(v) in idx:
                r.append(idx[str(v)])
            else:
                raise SemigroupError(f"unknown label {v!r} in table")
        out.append(r)
    return out


def parse_semigroup(source: str, name: str = "") -> Semigroup:
    """Parse the text table format or its JSON object equivalent."""
    text = source.strip()
    if text.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SemigroupError(f"bad JSON semigroup: {exc}") from None
        if "labels" not in obj or "table" not in obj:
            raise SemigroupError("JSON semigroup needs 'labels' and 'table'")
        labels = [str(x) for x in obj["labels"]]
        return Semigroup(labels, _table_from_labels(labels, obj["table"]), name=obj.get("name", name))
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if len(lines) < 2:
        raise SemigroupError("semigroup text needs an order line and a label line")
    try:
        n = int(lines[0])
    except ValueError:
        raise SemigroupError(f"first line must be the order, got {lines[0]!r}") from None
    labels = lines[1].split()
    if len(labels) != n:
        raise SemigroupError(f"expected {n} labels, got {len(labels)}")
    rows = [ln.split() for ln in lines[2:]]
    if len(rows) != n:
        raise SemigroupError(f"expected {n} table rows, got {len(rows)}")
    for r in rows:
        if len(r) != n:
            raise SemigroupError(f"table row {' '.join(r)!r} has {len(r)} entries, expected {n}")
    return Semigroup(labels, _table_from_labels(labels, rows), name=name)


def load_semigroup(path: str | Path) -> Semigroup:
    p = Path(path)
    return parse_semigroup(p.read_text(), name=p.stem)


# standard constructions ---------------------------------------------------

def cyclic(n: int) -> Semigroup:
    _positive(n)
    labels = ["e", "a"] + [f"a{k}" for k in range(2, n)]
    return Semigroup(labels[:n], [[(i + j) % n for j in range(n)] for i in range(n)], name=f"C{n}")


def left_zero(n: int) -> Semigroup:
    _positive(n)
    return Semigroup([f"l{k + 1}" for k in range(n)], [[i] * n for i in range(n)], name=f"LZ{n}")


def right_zero(n: int) -> Semigroup:
    _positive(n)
    return Semigroup([f"r{k + 1}" for k in range(n)], [list(range(n)) for _ in range(n)], name=f"RZ{n}")


def null_semigroup(n: int) -> Semigroup:
    """``xy = 0`` for all x, y."""
    _positive(n)
    labels = ["0"] + [f"n{k}" for k in range(1, n)]
    return Semigroup(labels, [[0] * n for _ in range(n)], name=f"Z{n}")


def chain(n: int) -> Semigroup:
    """Semilattice ``0 < 1 < ... < n-1`` under min."""
    _positive(n)
    return Semigroup([str(k) for k in range(n)],
                     [[min(i, j) for j in range(n)] for i in range(n)], name=f"SL{n}")


def nilpotent_monoid(k: int) -> Semigroup:
    """``N_k = {e, x, ..., x^(k-2), 0}`` with ``x^(k-1) = 0``."""
    if k < 2:
        raise SemigroupError("nilpotent_monoid needs k >= 2")
    # index 0 = e, index p = x^p for 1 <= p <= k-2, index k-1 = 0
    zero = k - 1

    def power(i):
        return 0 if i == 0 else (i if i < zero else None)

    labels = ["e"] + (["x"] + [f"x{p}" for p in range(2, k - 1)])[: k - 2] + ["0"]
    table = []
    for i in range(k):
        row = []
        for j in range(k):
            if i == zero or j == zero:
                row.append(zero)
            else:
                s = power(i) + power(j)
                row.append(s if s < zero else zero)
        table.append(row)
    return Semigroup(labels, table, name=f"N{k}")


def direct_product(a: Semigroup, b: Semigroup) -> Semigroup:
    pairs = [(i, j) for i in a.elements for j in b.elements]
    pos = {p: k for k, p in enumerate(pairs)}
    labels = [f"({a.labels[i]},{b.labels[j]})" for i, j in pairs]
    table = [[pos[(a.table[i1][i2], b.table[j1][j2])] for (i2, j2) in pairs] for (i1, j1) in pairs]
    return Semigroup(labels, table, name=f"{a.name}x{b.name}" if a.name and b.name else "")


def adjoin_identity(s: Semigroup) -> Semigroup:
    n = s.order
    lab = next(c for c in ("e", "1", "id", "_e") if c not in s.labels)
    table = [list(row) + [i] for i, row in enumerate(s.table)]
    table.append(list(range(n + 1)))
    return Semigroup(list(s.labels) + [lab], table, name=f"{s.name}^1" if s.name else "")


def _positive(n):
    if not isinstance(n, int) or n < 1:
        raise SemigroupError(f"order must be a positive integer, got {n!r}")


_BUILDERS = {
    "cyclic": cyclic,
    "left_zero": left_zero,
    "right_zero": right_zero,
    "null": null_semigroup,
    "chain": chain,
    "nilpotent_monoid": nilpotent_monoid,
    "product": direct_product,
    "adjoin_identity": adjoin_identity,
}


def build_standard(kind: str, *params) -> Semigroup:
    """Dispatch to one of the standard constructions by name."""
    try:
        fn = _BUILDERS[kind]
    except KeyError:
        raise SemigroupError(f"unknown construction {kind!r}; choose from {sorted(_BUILDERS)}") from None
    return fn(*params)


# enumeration up to isomorphism --------------------------------------------

def relabel(table: Sequence[Sequence[int]], perm: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """Table after renaming element ``i`` to ``perm[i]``."""
    n = len(table)
    inv = [0] * n
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(tuple(perm[table[inv[a]][inv[b]]] for b in range(n)) for a in range(n))


def canonical_form(table: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """Lexicographically least relabelled table (exhaustive over n!)."""
    n = len(table)
    return min(relabel(table, p) for p in permutations(range(n)))


def are_isomorphic(a: Semigroup, b: Semigroup) -> bool:
    if a.order != b.order:
        return False
    target = b.table
    return any(relabel(a.table, p) == target for p in permutations(range(a.order)))


def _associative_tables(n: int):
    """All labelled associative n x n tables, by backtracking over cells."""
    t = [[-1] * n for _ in range(n)]
    cells = [(i, j) for i in range(n) for j in range(n)]

    def consistent():
        for a in range(n):
            for b in range(n):
                ab = t[a][b]
                if ab < 0:
                    continue
                for c in range(n):
                    left = t[ab][c]
                    bc = t[b][c]
                    if left < 0 or bc < 0:
                        continue
                    right = t[a][bc]
                    if right >= 0 and left != right:
                        return False
        return True

    def rec(k):
        if k == len(cells):
            yield tuple(tuple(r) for r in t)
            return
        i, j = cells[k]
        for v in range(n):
            t[i][j] = v
            if consistent():
                yield from rec(k + 1)
        t[i][j] = -1

    yield from rec(0)


_LETTERS = "abcdefgh"


def enumerate_small(n: int) -> list[Semigroup]:
    """All semigroups of order ``n <= 4`` up to isomorphism, sorted by canonical table."""
    if not isinstance(n, int) or not 1 <= n <= 4:
        raise SemigroupError("enumerate_small supports 1 <= n <= 4")
    forms = {canonical_form(tab) for tab in _associative_tables(n)}
    labels = list(_LETTERS[:n])
    return [Semigroup(labels, tab, name=f"S{n}_{k:03d}") for k, tab in enumerate(sorted(forms))]
