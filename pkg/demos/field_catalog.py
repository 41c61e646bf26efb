"""
M(K) across the builtin field catalog
=====================================

Each profile declares a few arithmetic facts about K; the classifier
turns them into Jordan constants, and certify() rebuilds a group that
actually attains the value.
"""
from quadjordan.classifier import (all_predicate_profiles, builtin_catalog, certify,
                                   classify, fired_clauses)

for p in builtin_catalog():
    row = []
    for target, res in classify(p).items():
        row.append(f"{target.value}={getattr(res, 'value', '?')}")
    print(f"{p.name:18s}", "  ".join(row))

# a cheap certification: the 120 for Q(sqrt-7) comes from a twisted S5
p = next(q for q in builtin_catalog() if q.name == "Q(sqrt-7)")
res = certify(p, "M")
print(p.name, "M certified:", res.certified, "measured", res.measured)

# which tri-state profiles are decidable at all
undecided = [q.predicates() for q in all_predicate_profiles()
             if not any(ok for _, _, ok in fired_clauses(q))]
print(len(undecided), "profiles leave M open:")
for pred in undecided:
    print("   ", pred)
