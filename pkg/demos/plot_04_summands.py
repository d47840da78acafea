"""
Splitting a filtration along a direct summand
=============================================

An idempotent endomorphism ``e`` of ``M`` splits it as ``im e (+) ker e``.
The ordered filtration of ``M`` induces ordered filtrations of both pieces,
layer by layer, and the multiplicities add up.
"""
import numpy as np

from deltafilt import filt
from deltafilt.io import load_fixture

ws = load_fixture("a2_projectives.json")
system = ws.system()
m, e = ws.endomorphism("pick_P1_P2")

o = filt.ordered_filtration(system, ws.filtration("P1P1P2_a"))
split = filt.summand_split(system, m, o, e)
print("image ell:", split.image.ell(), " kernel ell:", split.kernel.ell())
for cls, row in split.certificate.rows:
    for w, (total, image, kernel) in row.items():
        print(f"layer {system.class_label(cls)}: ell_{w} {total} = {image} + {kernel}")

# conjugating by a random automorphism moves the summands around
rng = np.random.default_rng(3)
g = filt.random_automorphism(m, rng)
F = m.field
e2 = {v: F.matmul(g[v], e[v], F.inv(g[v])) if m.dims[v] else e[v] for v in e}
print("conjugate splits:", filt.summand_split(system, m, o, e2).certificate.passed)
