"""The Dold-Kan correspondence at finite level.

Run: python demos/dold_kan.py
"""
import hocat.chain as ch
import hocat.doldkan as dk
from hocat.exactlin import IntMatrix
from hocat.excat import FGAB, Mor, ab

print("monotone surjections [4] -> [2]:")
for s in dk.enumerate_surjections(4, 2):
    print("  ", s.values)

two = Mor(ab(1), ab(1), IntMatrix.from_rows([[2]]))
c = ch.Complex(FGAB, {1: ab(1), 0: ab(1)}, {1: two})
a = dk.gamma(c, 4)
print("\nGamma(Z -2-> Z) up to level 4:", [str(o) for o in a.objects])
print("simplicial identities hold:", a.is_valid())
print("N Gamma C:", dk.normalize(a))
print("comparison C -> N Gamma C is an isomorphism:", dk.check_equivalence(c, 4))
print("counit Gamma N A -> A is an isomorphism:", dk.check_counit(a))
