"""Cones, acyclicity and homotopy.

Run: python demos/chain_complexes.py
"""
import hocat.chain as ch
from hocat.exactlin import IntMatrix
from hocat.excat import FGAB, Mor, ab

# 0 -> Z -2-> Z -> Z/2 -> 0 as a complex in degrees 2, 1, 0
d2 = Mor(ab(1), ab(1), IntMatrix.from_rows([[2]]))
d1 = Mor(ab(1), ab(0, [2]), IntMatrix.from_rows([[1]]))
x = ch.Complex(FGAB, {2: ab(1), 1: ab(1), 0: ab(0, [2])}, {2: d2, 1: d1})

print(x)
print("acyclic (boundaries onto cycles):", ch.is_acyclic(x))
print("acyclic (Hom from generators)   :", ch.acyclic_by_generators(x))
print("acyclic (lattice containment)   :", ch.homology_vanishes(x))
print("split exact (contractible)      :", ch.is_split_exact(x))
# the identity is not null-homotopic; its class lives in H_0 Hom(X, X)
print("H_0 Hom(X, X) =", ch.homotopy_class_group(x, x, 0))

# The resolution Z -2-> Z of Z/2 is a quasi-isomorphism; its cone is acyclic.
p = ch.Complex(FGAB, {1: ab(1), 0: ab(1)}, {1: d2})
s = ch.sphere(0, ab(0, [2]))
f = ch.ChainMap(p, s, {0: d1})
cone = ch.cone(f).complex
print("\ncone of Z -2-> Z  ->  Z/2:", cone)
print("quasi-isomorphism:", ch.is_quasi_iso(f))
print("homology of the source:", [str(ch.homology(p, n).obj) for n in p.degrees()])
