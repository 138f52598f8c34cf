"""Moore's automaton: n states, 2**n deterministic states.

Each extra state doubles the determinized automaton, and every subset of
states (the empty one included) is reached.
"""

from detlab import determinize
from detlab.gen import gen_moore

print(f"{'n':>3} {'det states':>11} {'2^n':>6}")
for n in range(2, 13):
    result = determinize(gen_moore(n))
    print(f"{n:>3} {result.num_states:>11} {2**n:>6}")

a = gen_moore(3)
result = determinize(a)
print("\nreachable power states for n=3:")
for subset, idx in sorted(result.state_map.items(), key=lambda kv: kv[1]):
    print(f"  {idx}: {{{', '.join(f'q{q + 1}' for q in subset)}}}")
