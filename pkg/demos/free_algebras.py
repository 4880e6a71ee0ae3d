"""Truncated tensor, symmetric and free Lie algebras over Q.

Run: python demos/free_algebras.py
"""
import hocat.freealg as fa

d = 6
for q in range(4):
    t = fa.tensor_algebra_trunc(q, d)
    s = fa.symmetric_trunc(q, d)
    lie = fa.free_lie_trunc(q, d)
    print(f"q = {q}")
    print("  T:", t.dims)
    print("  S:", s.dims, " section:", fa.section_is_right_inverse(s))
    print("  L:", lie.dims, " section:", fa.lie_section_identity(lie))
    print("  PBW: prod (1 - t^n)^(-dim L_n) = sum q^n t^n:", fa.pbw_dimension_check(q, d))
