"""
Construction X on two w-constacyclic codes of length 39 over GF(4)
===================================================================

[39,27,7] contains [39,24,9]; gluing the full space GF(4)^3 on the
cosets gives a [42,27,>=8] code whose true distance is 9.  Shortening on
the appended coordinates keeps d = 9.

    python tutorials/03_construction_x.py           # bound only (fast)
    python tutorials/03_construction_x.py --exact   # a few minutes on one core
"""

import sys
import time

from constacyclic.code import CodeSpec, build_code
from constacyclic.constructions import auxiliary_code, construction_x, shorten
from constacyclic.distance import DistanceResult, bz_distance

exact = "--exact" in sys.argv

C1 = build_code(CodeSpec.from_cosets(4, 39, 2, [10, 19]))
C2 = build_code(CodeSpec.from_cosets(4, 39, 2, [10, 13, 19]))
print(C1.provenance["spec"], "k =", C1.k)
print(C2.provenance["spec"], "k =", C2.k)

if exact:
    for C in (C1, C2):
        t = time.time()
        C.distance = bz_distance(C)
        print(C.params(), f"{time.time() - t:.1f} s")
else:
    C1.distance = DistanceResult(7, "exact", lower=7, upper=7)
    C2.distance = DistanceResult(9, "exact", lower=9, upper=9)

E = construction_x(C1, C2, auxiliary_code(4, 3, 3))
print("Construction X:", E.params(), "predicted", E.provenance["predicted"])

if exact:
    t = time.time()
    E.distance = bz_distance(E)
    print(E.params(), f"{time.time() - t:.1f} s, {E.distance.codewords:.3g} codewords")
    for pos in ([41], [40, 41]):
        S = shorten(E, pos)
        S.distance = bz_distance(S, target=9)
        print("shortened:", S.params())
