"""Face decompositions of Richardson subsets in the B2 string polytope, lambda = (1,1)."""
from semitoric import crystal, polyhedra, reparam, rootdata

c = rootdata.validate_cartan("B2")
reparam.ensure_moves(c)
g = crystal.generate(c, (1, 2, 1, 2), (1, 1))
poly = polyhedra.string_polytope(g)
print("facets:")
for h in poly.h_rep:
    print("  ", h)
for w in rootdata.all_elements(c):
    for tau in rootdata.all_elements(c):
        rep = polyhedra.degeneration_report(g, w, tau, poly)
        if not rep.subset_size:
            continue
        dims = [comp["dimension"] for comp in rep.components]
        print(f"w={rep.w} tau={rep.tau}: {rep.subset_size} points, faces of dimension {dims}")
