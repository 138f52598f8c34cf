"""Weighted determinization over the tropical semifield.

Power states carry residual weights.  When residual differences repeat the
construction stops; when they drift forever it runs out of fuel, and the
weighted transition monoid is infinite too.
"""

from detlab import (
    determinize_weighted,
    serialize_automaton,
    weighted_monoid_closure,
    weighted_transition_matrices,
)
from detlab.gen import tropical_two_branch
from detlab.oracles import word_weight_bruteforce

w = tropical_two_branch(divergent=False)
result = determinize_weighted(w)
print("two-branch automaton, determinized:")
print(serialize_automaton(result.det))
for subset, idx in result.state_map.items():
    print(f"  state {idx}: residuals {[(q, str(r)) for q, r in subset]}")
print(f"weight of 'ab': {word_weight_bruteforce(result.det, 'ab')}")
closure = weighted_monoid_closure(weighted_transition_matrices(w))
print(f"monoid size {closure.size}, det states {result.num_states}")

w = tropical_two_branch(divergent=True)
result = determinize_weighted(w, 1000)
closure = weighted_monoid_closure(weighted_transition_matrices(w), fuel=1000)
print(f"\nwith c-loops of weight 1 and 2: terminated={result.terminated}, "
      f"monoid complete={closure.complete}")
