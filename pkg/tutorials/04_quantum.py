"""
Hermitian dual-containing constacyclic codes over GF(4)
=======================================================

Scan short lengths for codes containing their Hermitian dual and print the
stabilizer parameters [[n, 2k - n, d]]_2.
"""

from constacyclic.code import build_code, hermitian_dual_defining_set
from constacyclic.constructions import hermitian_dual_containing, quantum_params
from constacyclic.distance import minimum_distance
from constacyclic.search import SearchJob, enumerate_specs

job = SearchJob(q=4, n_min=3, n_max=15, max_cosets=None)
seen = {}
for spec in enumerate_specs(job):
    if 2 * spec.k <= spec.n:
        continue
    C = build_code(spec)
    if not hermitian_dual_containing(C):
        continue
    assert set(spec.defining_set) <= set(hermitian_dual_defining_set(spec))
    minimum_distance(C)
    Q = quantum_params(C)
    key = (Q.n, Q.k)
    if key not in seen or Q.d > seen[key][0].d:
        seen[key] = (Q, spec)

for (n, k), (Q, spec) in sorted(seen.items()):
    print(f"{str(Q):>16}  from {spec.to_text()}")
