"""Factorizations and lifts in the projective model structures.

Run: python demos/model_structure.py
"""
import hocat.chain as ch
import hocat.model as md
from hocat.exactlin import IntMatrix
from hocat.excat import FGAB, Mor, ab

# 0 -> S^0(Z/2) is not a cofibration; factoring it gives a cofibrant replacement.
target = ch.sphere(0, ab(0, [2]))
f = ch.ChainMap.zero(ch.zero_complex(FGAB), target)
print("0 -> S^0(Z/2):", md.classify_map_model(f, md.CH_GEQ0))

w = md.factor_cof_triv_fib(f, md.CH_GEQ0)
print("\ncofibration / trivial fibration")
print("  middle:", w.middle)
print("  right :", md.classify_map_model(w.right, md.CH_GEQ0))

v = md.factor_triv_cof_fib(f, md.CH_PLUS)
print("\ntrivial cofibration / fibration in the unbounded flavor")
print("  middle:", v.middle)
print("  left  :", md.classify_map_model(v.left, md.CH_PLUS))

# The generating cofibration S^0(Z) -> D^1(Z) lifts against the trivial
# fibration: the cycle 2 in the middle complex is a boundary.
g = ab(1)
left = ch.ChainMap(ch.sphere(0, g), ch.disk(1, g), {0: Mor.identity(g)})
top = ch.ChainMap(ch.sphere(0, g), w.middle, {0: Mor(g, w.middle.obj(0), IntMatrix.from_rows([[2]]))})
bottom = ch.ChainMap.zero(ch.disk(1, g), target)
lift = md.solve_lifting(md.LiftingProblem(top, bottom, left, w.right), md.CH_GEQ0)
print("\nlift found:", lift.verify())
for n in (0, 1):
    print(f"  degree {n}: {list(lift.diagonal[n].matrix.data)}")

print("\nretract argument agrees with the cofibration test:",
      md.retract_argument_check(f, md.CH_GEQ0) == md.is_cofibration(f))
