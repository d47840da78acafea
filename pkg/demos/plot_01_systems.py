"""
Homological systems on the A2 quiver
====================================

Two systems over ``1 -> 2`` with coefficients in GF(5): the indecomposable
projectives, and the simples.  Dropping the relation ``1 <= 2`` from the
simples breaks the Ext condition, and the report says which pair is at fault.
"""
from deltafilt.hsys import validate_prime
from deltafilt.io import load_fixture

ws = load_fixture("a2_projectives.json")
projectives = ws.system()
print(projectives)
print("valid:", projectives.is_valid)

# Hom and Ext dimensions between all pairs are computed once and cached
print("Hom:", projectives.hom_dims)
print("Ext:", projectives.ext_dims)

simples = load_fixture("a2_simples.json").system()
print("simples with 1 <= 2 valid:", simples.is_valid)

discrete = load_fixture("a2_simples_discrete.json").system()
for axiom, result in discrete.report.axioms.items():
    print(axiom, "pass" if result.passed else f"fail {result.witnesses}")

# the same constraints, checked against every linear extension
prime = validate_prime(simples)
print(prime.linearizations, "linearizations, violations:", prime.violations)
