"""
Sorting a filtration by swapping adjacent steps
===============================================

``S1 (+) S2`` filtered with ``S1`` at the bottom is slim but out of order.
Since ``Ext^1(S2, S1) = 0`` the two steps can be exchanged; the multiplicity
vector stays fixed through every swap.
"""
import numpy as np

from deltafilt import filt
from deltafilt.io import load_fixture

ws = load_fixture("a2_simples.json")
system = ws.system()

f = filt.validate_filtration(system, ws.filtration("S1S2_a"))
print("factors bottom-up:", f.factors)
print("order vector:", [system.class_label(u) for u in filt.order_vector(system, f)])

s = filt.sort_slim(system, f, certify=True)
print("sorted:", [system.class_label(u) for u in filt.order_vector(system, s)])
print("ell after each swap:", s.log)

# a longer random example: a direct sum shuffled by a random automorphism
rng = np.random.default_rng(7)
g = filt.direct_sum_filtration(system, ["1", "2", "2", "1", "2"])
g = filt.apply_automorphism(g, filt.random_automorphism(g.module, rng))
g = filt.validate_filtration(system, filt.filtration(g.module, g.chain[1:-1]))
t = g.steps
out = filt.sort_slim(system, g)
print(f"{len(out.log)} swaps for {t} steps (bound {t * (t - 1) // 2})")
print("ell:", filt.ell(g), "->", filt.ell(out))
