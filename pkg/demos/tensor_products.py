"""Tensor products of complexes and pushout-products.

Run: python demos/tensor_products.py
"""
import hocat.chain as ch
import hocat.model as md
from hocat.exactlin import IntMatrix
from hocat.excat import FGAB, Mor, ab
from hocat.monoidal import is_flat_probe, pushout_product, tensor_complexes

two = Mor(ab(1), ab(1), IntMatrix.from_rows([[2]]))
x = ch.Complex(FGAB, {1: ab(1), 0: ab(1)}, {1: two})
t = tensor_complexes(x, x).product
print("(Z -2-> Z) tensor itself:", t)
print("  homology:", [str(ch.homology(t, n).obj) for n in t.degrees()])

# A disk on a flat object stays acyclic after tensoring.
d = ch.disk(1, ab(2))
print("\nD^1(Z^2) flat:", is_flat_probe(ab(2)),
      " D^1(Z^2) tensor X acyclic:", ch.is_acyclic(tensor_complexes(d, x).product))

# Pushout-products of generating cofibrations are cofibrations.
gens = md.generating_cofibrations(FGAB, md.CH_GEQ0, 2)
ok = all(md.is_cofibration(pushout_product(i, j)) for i in gens for j in gens)
print(f"\nall {len(gens) ** 2} pushout-products of generators are cofibrations:", ok)
