"""Print the A2 crystal for lambda = (1,1): string data, Lusztig data, the
Schutzenberger partner and the matching Young tableau."""
from semitoric import crystal, rootdata

c = rootdata.validate_cartan("A2")
g = crystal.generate(c, (1, 2, 1), (1, 1))
print(f"{len(g)} elements along word {g.word}")
for b in g.elements:
    lus = crystal.lusztig_params(g, b).coords
    T = crystal.tableau_of(g, b)
    print(f"string {b.coords}  lusztig {lus}  eta -> {g.eta(b).coords}  tableau {T.rows}")
