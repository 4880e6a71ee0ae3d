"""Projective resolutions and Ext over Z.

Run: python demos/ext_groups.py
"""
from hocat.excat import ab, hom_group
from hocat.resolve import ext_group, resolve_object

a = ab(1, [2, 6])
r = resolve_object(a)
print("resolution of", a)
for n in r.resolvent.degrees():
    print(f"  P_{n} = {r.resolvent.obj(n)}")
print("  verified:", r.verify())

print()
for x, y in [(ab(0, [2]), ab(1)), (ab(0, [4]), ab(0, [6])), (ab(0, [9]), ab(0, [6])), (ab(2), ab(0, [5]))]:
    print(f"Hom({x}, {y}) = {hom_group(x, y)}    Ext^1 = {ext_group(1, x, y)}    Ext^2 = {ext_group(2, x, y)}")
