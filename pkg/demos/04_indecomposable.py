"""Dense, well-connected letters force the power states to fill up fast.

With every letter r-indecomposable, each symbol adds at least r states to a
power state until it is full, so words longer than ceil((n-1)/r) all map to
the all-ones matrix and the monoid stays tiny.
"""

import math

from detlab import determinize, max_indecomposability, monoid_closure, transition_matrices
from detlab.analysis import indecomposable_bound
from detlab.gen import gen_indecomposable

n, sigma = 8, 2
for r in (1, 2, 3):
    a = gen_indecomposable(n, sigma, r, seed=r)
    mats = transition_matrices(a)
    certified = min(max_indecomposability(m) for m in mats.values())
    closure = monoid_closure(mats)
    print(f"r={r}: certified r={certified}, ceil((n-1)/r)={math.ceil((n - 1) / r)}, "
          f"monoid={closure.size}, det={determinize(a).num_states}, "
          f"bound={indecomposable_bound(n, sigma, certified)}")
