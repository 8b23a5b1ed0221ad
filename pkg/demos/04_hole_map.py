"""Mapping holes of P(D) to holes of U(D), and where the map stops being injective."""
# %%
from phylochord import find_remark_counterexamples, make_digraph, phi_details, verify_hole_correspondence

# U(D) is a 5-cycle; the sink 4 joins 2 and 3 in P(D) and cuts a 4-hole off it
D = make_digraph(5, [(0, 1), (0, 2), (1, 3), (2, 4), (3, 4)])
rep = verify_hole_correspondence(D)
for H in rep.holes_P:
    res = phi_details(D, H)
    print(f"P-hole {H} -> U-hole {res.hole} via carers {res.chosen.carers}")
print("injective:", rep.injective, "| holes_U >= holes_P:", rep.count_ok)

# %%
# overlapping P-holes can share their image
D = make_digraph(6, [(0, 2), (0, 3), (1, 3), (1, 4), (2, 5), (3, 4), (4, 5)])
rep = verify_hole_correspondence(D)
print({str(h): str(img) for h, img in rep.phi.items()}, "injective:", rep.injective)

# %%
# search for both phenomena among (2,2) digraphs with up to ten vertices
for finding in find_remark_counterexamples(max_n=10):
    print(finding.kind, sorted(finding.digraph.arcs))
    print("   ", finding.detail)
