"""Sample a biased 3-SAT formula, write it as DIMACS and solve it three ways.

    python3 demos/01_formulas_and_solvers.py
"""

import io

from biased_ksat import dimacs
from biased_ksat.formula import clause_to_subcube, sample_formula
from biased_ksat.solvers import brute_force_sat, dpll_sat, spine_set, ucp_run

n, k, p = 14, 3, 0.4  # literals negated with probability 0.4, so b = 0.1
f = sample_formula(n, k, p, m=int(3.5 * n), seed=1)

print(dimacs.dumps(f).decode().splitlines()[0])
print("first clause", f.clauses[0], "forbids the subcube", clause_to_subcube(f.clauses[0], n).tolist())

# DIMACS round trip keeps clauses and the metadata line
assert dimacs.loads(io.BytesIO(dimacs.dumps(f)).read()).clauses == f.clauses

a = dpll_sat(f)
print("DPLL:", "SAT" if a is not None else "UNSAT")

counts = brute_force_sat(f)
print("solutions per layer Z_i:", counts.Z.tolist())
print("locally minimal M_i:    ", counts.M.tolist())

if a is not None:
    sp = spine_set(f)
    print(f"spine: {len(sp.s_plus)} locked TRUE, {len(sp.s_minus)} locked FALSE")

out = ucp_run(f, rng=3)
print("UCP:", "success" if out.success else f"failed at step {out.first_failure}")
