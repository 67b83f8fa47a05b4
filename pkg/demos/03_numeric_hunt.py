"""Search for solutions numerically and compare against the exact families.

The hunter knows nothing about the families: it runs Newton's method from
random complex starts.  Every root it finds must land in one of them.

Run:  python demos/03_numeric_hunt.py
"""
from semisine.families import enumerate_family_solutions
from semisine.hunter import HuntConfig, completeness_report, hunt
from semisine.semigroup import direct_product, cyclic, nilpotent_monoid

S = direct_product(cyclic(2), nilpotent_monoid(3))
z0 = "(a,e)"
cfg = HuntConfig(trials=200, seed=0)

res = hunt(S, z0, "sine", cfg)
rep = completeness_report(S, z0, res, enumerate_family_solutions(S, z0))
print("\n".join(rep.lines()))

# Switching a family off in the classifier shows that the check has teeth:
# its roots now come back unclassified.
for fam in ("F2", "F6", "F7"):
    if res.tags().get(fam):
        off = res.reclassify({fam})
        print(f"without {fam}: {len(off.unclassified)} unclassified")

# One root per family, for a feel of what the search returns.
print("\nsample roots:")
shown = set()
for s, c in zip(res.solutions, res.classifications):
    if c.tag in shown:
        continue
    shown.add(c.tag)
    f = ", ".join(f"{v.real:+.3f}{v.imag:+.3f}i" for v in s.f)
    print(f"  {str(c):<4} residual {s.residual:.1e}  f = ({f})")

# The subtraction law, same machinery.
sub = hunt(S, z0, "subtraction", cfg)
print("\nsubtraction:", dict(sub.tags()), "unclassified:", len(sub.unclassified))
