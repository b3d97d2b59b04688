"""Tropicalize the SL3 transition maps and compare with the piecewise-linear moves."""
from semitoric import geomlift, reparam, tropical as tr

sl3 = geomlift.sl_rep(2)
table = reparam.move_table((-1, -1))
cases = [
    ("Lusztig (1,2,1)->(2,1,2)", geomlift.transition_components(sl3, (1, 2, 1), (2, 1, 2)), table.lusztig_move),
    ("string (1,2,1)->(2,1,2)", geomlift.transition_components(sl3, (-1, -2, -1), (-2, -1, -2)), table.string_move),
    ("eta", geomlift.eta_components(sl3, (1, 2, 1), (1, 2, 1)), (tr.p(1), tr.p(3), tr.p(2) - tr.p(3))),
]
for name, comps, expect in cases:
    rep = geomlift.tropical_bridge(comps, expect, lo=0, hi=5)
    print(f"{name}: {rep['status']}")
    for item in rep["components"]:
        print(f"   {item['component']} = {item['tropical']}")
