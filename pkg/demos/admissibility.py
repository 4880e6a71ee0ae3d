"""Admissible morphisms in the three small exact categories.

Run: python demos/admissibility.py
"""
from hocat.exactlin import IntMatrix, RatMatrix
from hocat.excat import Mor, ab, classify, cokernel, filt, kernel, present_orders, vect

# A bijective map of filtered spaces that is not an isomorphism:
# the identity of Q sending the zero filtration into the full one.
f = Mor(filt(1), filt(1, [[1]]), RatMatrix.identity(1))
c = classify(f)
print("id: (Q,0) -> (Q,Q)")
print("  mono, epi:", c.is_mono, c.is_epi)
print("  admissible:", c.is_admissible, " coimage -> image iso:", c.coimage_image_iso)

# Over Z the same questions are answered with Smith normal forms.
g = Mor(ab(1, [4]), ab(0, [4, 8]), IntMatrix.from_rows([[1, 2], [2, 0]]))
print("\ng:", g.src, "->", g.dst)
print("  kernel  :", kernel(g).obj)
print("  cokernel:", cokernel(g).obj)
print("  admissible epic:", classify(g).is_admissible_epi)

# Normal forms identify Z/3 + Z/4 with Z/12.
print("\nZ/3 + Z/4 =", present_orders([3, 4]).obj)

# In VECTQ everything is admissible.
h = Mor(vect(3), vect(2), RatMatrix.from_rows([[1, 2, 3], [2, 4, 6]]))
print("\nrank-one map Q^3 -> Q^2: kernel", kernel(h).obj, "cokernel", cokernel(h).obj)
