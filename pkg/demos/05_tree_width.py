"""Bounded ambiguity keeps power states small.

If no nondeterministic choice sits on a cycle, the number of paths per word
is bounded by some k, and power states have at most k members.
"""

from detlab import determinize, tree_width_analysis
from detlab.analysis import binomial_tree_width_bound, tree_width_bound
from detlab.gen import gen_finite_tw, gen_moore

n = 8
for k in (1, 2, 3):
    widths, sizes = [], []
    for seed in range(20):
        a = gen_finite_tw(n, k, seed)
        widths.append(tree_width_analysis(a).value)
        sizes.append(determinize(a).num_states)
    print(f"k={k}: widths {min(widths)}..{max(widths)}, det states up to {max(sizes)}, "
          f"bound {tree_width_bound(n, k)}, subsets of size <= k: {binomial_tree_width_bound(n, k)}")

tw = tree_width_analysis(gen_moore(4))
print(f"\nmoore n=4 has finite tree width: {tw.finite}")
