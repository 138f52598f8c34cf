"""One-letter automata with an irreducible transition matrix.

The power sequence B, B^2, ... becomes periodic after its index, with
period at most n, so determinization stays quadratic: at most n^2 - n + 2
states.
"""

from detlab import determinize, index_period, transition_matrices
from detlab.analysis import one_letter_bound
from detlab.gen import gen_one_letter_irreducible

print(f"{'n':>3} {'seed':>4} {'index':>6} {'period':>7} {'det':>5} {'bound':>6}")
for n in (4, 8, 12, 20):
    for seed in range(3):
        a = gen_one_letter_irreducible(n, seed)
        ip = index_period(transition_matrices(a)["a"])
        states = determinize(a).num_states
        print(f"{n:>3} {seed:>4} {ip.index:>6} {ip.period:>7} {states:>5} {one_letter_bound(n):>6}")
