"""
Infinite multiplicities
=======================

Only the Hom/Ext pattern of the system is needed to sort and merge, so steps
may carry cardinals.  Finite counts are absorbed by an aleph.
"""
from deltafilt.hsys import ext_pattern
from deltafilt.io import load_fixture
from deltafilt.symb import Cardinal, symb_ell, symb_merge, symb_sort

print(Cardinal(7) + Cardinal.aleph(0))

ws = load_fixture("a2_simples.json")
pattern = ext_pattern(ws.system())

f = ws.symbolic("unsorted")
print([(w, str(c)) for w, c in f.steps])
s = symb_sort(pattern, f)
print([(w, str(c)) for w, c in s.steps])

g = ws.symbolic("mergeable")
layers = symb_merge(pattern, symb_sort(pattern, g))
print([{w: str(c) for w, c in bucket.items()} for _, bucket in layers])
print({w: str(c) for w, c in symb_ell(layers).items()})
