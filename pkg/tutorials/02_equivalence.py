"""
Equivalent families and explicit isometries
===========================================

Over GF(5) at length 14 the cyclic and 4-constacyclic families are
monomially equivalent, and the map is a diagonal scaling x_j -> xi^(i j) x_j.
"""

from constacyclic.code import CodeSpec, build_code, count_codes, is_constacyclic
from constacyclic.distance import weight_enumerator
from constacyclic.equivalence import apply_isometry, build_witness, classify, criteria, emit_dot

for c in criteria(5, 14, 1, 4):
    print(c.kind.value, ":", c.condition())

w = build_witness(5, 14, 1, 4)
print(w)
print("scalar xi^i =", w.scalar, " diagonal =", w.diagonal().tolist())

C = build_code(CodeSpec.from_cosets(5, 14, 1, [0]))
D = apply_isometry(w, C)
print(C.params(), "->", D.params(), " 4-constacyclic:", is_constacyclic(D, 4))
print("same weight enumerator:", weight_enumerator(C) == weight_enumerator(D))

# different family sizes rule out equivalence
print("n=12: 2-constacyclic", count_codes(5, 12, 2), "codes vs 4-constacyclic", count_codes(5, 12, 4))

g = classify(7, 8)
print("GF(7), n=8 classes:", g.classes)
print(emit_dot(g))
