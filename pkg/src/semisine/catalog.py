"""The bundled desk corpus of small semigroups."""
from __future__ import annotations

from pathlib import Path

from .semigroup import (Semigroup, adjoin_identity, chain, cyclic, direct_product, enumerate_small,
                        left_zero, nilpotent_monoid, null_semigroup)

SMALL_COUNTS = {1: 1, 2: 5, 3: 24, 4: 188}


def _named(S: Semigroup, name: str) -> Semigroup:
    return Semigroup(S.labels, S.table, name)


def named_instances() -> list[Semigroup]:
    """The hand-picked instances: C2, N3, LZ2, the two-element semilattice, C2xN3."""
    return [
        _named(cyclic(2), "c2"),
        _named(nilpotent_monoid(3), "n3"),
        _named(left_zero(2), "lz2"),
        _named(chain(2), "sl2"),
        _named(direct_product(cyclic(2), nilpotent_monoid(3)), "c2xn3"),
    ]


def order4_instances() -> list[Semigroup]:
    return [
        _named(cyclic(4), "c4"),
        _named(direct_product(cyclic(2), cyclic(2)), "c2xc2"),
        _named(nilpotent_monoid(4), "n4"),
        _named(chain(4), "chain4"),
        _named(direct_product(left_zero(2), cyclic(2)), "lz2xc2"),
        _named(adjoin_identity(cyclic(3)), "c3e"),
        _named(null_semigroup(4), "null4"),
    ]


def small_instances(max_order: int = 3) -> list[Semigroup]:
    out = []
    for n in range(1, max_order + 1):
        out += enumerate_small(n)
    return out


def catalog(max_order: int | None = None, include_small: bool = True) -> list[Semigroup]:
    """All semigroups of order <= 3 up to isomorphism plus the named constructions.

    ``max_order`` drops instances larger than the bound.
    """
    items = (small_instances(3) if include_small else []) + named_instances() + order4_instances()
    if max_order is not None:
        items = [S for S in items if S.order <= max_order]
    return items


def write_catalog(out_dir: str | Path, items: list[Semigroup] | None = None) -> list[Path]:
    """One ``<name>.sg`` file per semigroup in the text format; bytes are deterministic."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for S in items if items is not None else catalog():
        p = out / f"{S.name}.sg"
        p.write_text(S.to_text(), encoding="utf-8")
        paths.append(p)
    return paths
