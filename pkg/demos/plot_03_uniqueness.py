"""
The ordered filtration does not depend on where you start
=========================================================

``P1 (+) P1 (+) P2`` over the projective system carries several stored
filtrations.  After sorting and merging equal classes they all produce the
same chain of subspaces, under every linearization of the order.
"""
from deltafilt import filt
from deltafilt.io import load_fixture, ordered_to_json

ws = load_fixture("a2_projectives.json")
system = ws.system()

names = ["P1P1P2_a", "P1P1P2_b", "P1P1P2_c", "P1P1P2_coarse"]
ordered = [filt.ordered_filtration(system, ws.filtration(n)) for n in names]
for n, o in zip(names, ordered):
    print(n, [layer.sub.dim_vector() for layer in o.layers])

verdict = filt.check_uniqueness(system, ws.filtration(names[0]), ws.filtration(names[1]))
print("same chain:", verdict.passed, verdict.ell_first)

for lin, o in filt.linearization_sweep(system, ws.filtration(names[2]), cap=720):
    print(lin.labels(), o.same_chain(ordered[0]))

print(ordered_to_json(system, ordered[0]))
