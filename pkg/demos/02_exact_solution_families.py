"""Exact solutions of f(x y z0) = f(x) g(y) + f(y) g(x) and how they are checked.

Run:  python demos/02_exact_solution_families.py
"""
from semisine.classify import classify_solution
from semisine.families import enumerate_family_solutions, solve_sine_subtraction
from semisine.semigroup import cyclic, nilpotent_monoid
from semisine.verifier import check_branch_identity, check_kannappan_sine

c2 = cyclic(2)

# Every witness comes with a family tag and the parameters used to build it.
# Free scalars are sampled, so each family shows several witnesses; one each:
sols = enumerate_family_solutions(c2, "a")
print("C2, z0 = a")
for fam in ("F1", "F2", "F3", "F4", "F5", "F6", "F7"):
    ws = sols.by_family(fam)
    if not ws:
        print(f"  {fam}: {sols.support[fam]}")
        continue
    w = ws[0]
    f = ", ".join(str(v) for v in w.f.values)
    g = ", ".join(str(v) for v in w.g.values)
    print(f"  {fam}: f = ({f})  g = ({g})   [{len(ws)} witnesses]")

# The verifier is exhaustive over all pairs (x, y).  A wrong pair is reported
# together with the first offending products.
bad = check_kannappan_sine(c2, "a", (1, 0), (1, 0))
print("\n".join(bad.lines(c2, limit=3)))

# An independent structural identity that every solution obeys.
rep = check_branch_identity(c2, "a", (1, 0), (0, 1))
print("\nbranch identity:", rep.info["branch"], "->", "ok" if rep.passed else "broken")

# Classification maps a solution back to its family; overlapping families
# are all listed.
c = classify_solution(c2, "a", (1, 0), (0, 1))
print(f"classify (1,0),(0,1): {c.tag}  (all matches: {', '.join(c.all_tags)})")

# The subtraction law has only two shapes.
n3 = nilpotent_monoid(3)
sub = solve_sine_subtraction(n3, "x")
print("\nN3, z0 = x, subtraction law:", sorted(set(sub.families)))
