"""Acyclic orientations of short cycles and which of them (2,2) digraphs tolerate."""
# %%
from phylochord import burnside_count, classify_all, enumerate_cycle_orientations, forbidden_catalog
from phylochord.orientations import orientation_from_signs
from phylochord import scan_forbidden_induced

for k in range(4, 11):
    print(f"k={k}: {len(enumerate_cycle_orientations(k))} classes (Burnside: {burnside_count(k)})")

# %%
# classification by witness search: a witness is a (2,2) digraph with chordal
# phylogeny graph containing the orientation as an induced subdigraph
for k in (4, 5, 6):
    for O in classify_all(k):
        extra = "" if O.witness is None else f" with {O.witness.n - k} extra vertices"
        print(f"{O}{extra}")

# %%
# the shipped catalog lists the five 6-cycle orientations without a witness
for O in forbidden_catalog():
    print(O.name, sorted(O.representative.arcs))

# %%
# scanning a digraph for them
D = orientation_from_signs([0, 1, 1, 1, 1, 0])
print(scan_forbidden_induced(D))
