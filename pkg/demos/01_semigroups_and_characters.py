"""Walk through the basic objects: tables, products, exponentials.

Run:  python demos/01_semigroups_and_characters.py
"""
from semisine.catalog import catalog
from semisine.characters import check_prime_set_closure, enumerate_multiplicative
from semisine.semigroup import cyclic, direct_product, nilpotent_monoid, parse_semigroup

# A semigroup is just a labelled Cayley table.  Here is the monoid {e, x, 0}
# with x*x = 0, written in the text format the CLI reads: the order, the
# labels, then one row per element.
n3 = parse_semigroup("""\
3
e x 0
e x 0
x 0 0
0 0 0
""")
print("N3 labels:", n3.labels)
x = n3.index("x")
print("x*x =", n3.labels[n3.mul(x, x)])

# The subset S^2 z0 decides which families can carry extra freedom.
for z in n3.labels:
    sq = sorted(n3.labels[i] for i in n3.square_z0(z))
    print(f"S^2 {z} = {{{', '.join(sq)}}}")

# Exponentials on C2 x N3: each one is zero on an ideal, and the prime set
# P inside that ideal is where special solutions may live.
S = direct_product(cyclic(2), nilpotent_monoid(3))
print(f"\n{S.name}: order {S.order}")
for chi in enumerate_multiplicative(S):
    vals = " ".join(str(v) for v in chi.values)
    nul = ",".join(S.labels[i] for i in sorted(chi.null_space))
    pri = ",".join(S.labels[i] for i in sorted(chi.prime_set))
    closed = "closed" if check_prime_set_closure(chi) else "NOT closed"
    print(f"  chi = ({vals})   I = {{{nul}}}   P = {{{pri}}}  ({closed})")

# The bundled corpus: every semigroup of order <= 3 plus a few larger ones.
items = catalog()
by_order = {}
for T in items:
    by_order[T.order] = by_order.get(T.order, 0) + 1
print("\ncorpus sizes by order:", dict(sorted(by_order.items())))
