"""The transition monoid caps the determinized size.

Every power state is I.M for some monoid element M, so the number of
determinized states never exceeds the number of distinct Boolean matrices
generated by the letters.  The gap is often large.
"""

from detlab import determinize, monoid_closure, transition_matrices
from detlab.gen import gen_moore, gen_random

print(f"{'automaton':<22} {'det':>5} {'monoid':>7}")
for label, a in [("moore n=3", gen_moore(3)), ("moore n=4", gen_moore(4))] + [
    (f"random n=5 seed={s}", gen_random(5, 2, s)) for s in range(6)
]:
    closure = monoid_closure(transition_matrices(a))
    print(f"{label:<22} {determinize(a).num_states:>5} {closure.size:>7}")

closure = monoid_closure(transition_matrices(gen_moore(3)))
print("\nshortest words for the first few monoid elements of moore n=3:")
for m in closure.elements[:8]:
    word = "".join(closure.generator_words[m]) or "<eps>"
    print(f"  {word:<6} rows={'/'.join(str(m).splitlines())}")
