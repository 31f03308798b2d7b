"""
Cyclotomic cosets, generator polynomials and code counts
=========================================================

Length 10 over GF(3): the cyclic family (a = 1) and the negacyclic
family (a = 2 = -1).
"""

from constacyclic.code import CodeSpec, build_code, count_codes, family
from constacyclic.poly import format_poly

for a in (1, 2):
    fam = family(3, 10, a)
    print(f"x^10 - {a} over GF(3), ord(a) = {fam.root.tn // 10}")
    for i, cos in enumerate(fam.cosets):
        print(f"  {cos.label:>6}  {list(cos.members)}  ->  {format_poly(fam.minpoly(i))}")
    print(f"  {count_codes(3, 10, a)} codes in the family\n")

# a code is named by its defining set; k = n - |D|
spec = CodeSpec.from_cosets(3, 10, 2, [5])
C = build_code(spec)
print(spec.to_text(), C.params())
print(C.G)
