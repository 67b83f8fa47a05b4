import itertools

import pytest

from semisine.cyclotomic import CycNum, parse_cycnum, root_of_unity
from semisine.semigroup import chain, cyclic, direct_product, left_zero, nilpotent_monoid


def cv(*vals):
    """Exact value tuple from ints, fractions or CycNum string literals."""
    return tuple(parse_cycnum(v) if isinstance(v, str) else CycNum(v) if not isinstance(v, CycNum) else v
                 for v in vals)


I4 = root_of_unity(4, 1)


@pytest.fixture
def c2():
    return cyclic(2)


@pytest.fixture
def n3():
    return nilpotent_monoid(3)


@pytest.fixture
def lz2():
    return left_zero(2)


@pytest.fixture
def sl2():
    return chain(2)


@pytest.fixture
def c2xn3():
    return direct_product(cyclic(2), nilpotent_monoid(3))


def brute_iso_classes(n):
    # independent oracle: every table, associativity by all n^3 triples, dedupe by all n! relabelings
    reps = []
    r = range(n)
    for flat in itertools.product(r, repeat=n * n):
        t = [flat[i * n:(i + 1) * n] for i in r]
        if any(t[t[i][j]][k] != t[i][t[j][k]] for i in r for j in r for k in r):
            continue
        forms = set()
        for perm in itertools.permutations(r):
            inv = {p: i for i, p in enumerate(perm)}
            forms.add(tuple(tuple(perm[t[inv[a]][inv[b]]] for b in r) for a in r))
        if not any(f in forms for f in reps):
            reps.append(min(forms))
    return len(reps)
