"""Brute-force reference implementations.

These share no code with the algorithms they check: they use frozensets,
explicit path enumeration and numpy matrix powers instead of bitsets and
worklists.  Tests and the acceptance suite compare against them.
"""

from __future__ import annotations

from collections import deque
from itertools import product

import numpy as np

from .core import Automaton, WeightedAutomaton


def _delta(a: Automaton):
    out = {}
    for p, x, q in a.transitions:
        out.setdefault((p, x), set()).add(q)
    return out


def oracle_powerset(a: Automaton) -> Automaton:
    """Breadth-first reachable-subset construction (the empty subset included)."""
    delta = _delta(a)
    start = frozenset(a.initial)
    names = {start: 0}
    queue = deque([start])
    arcs = []
    while queue:
        s = queue.popleft()
        for x in a.alphabet:
            t = frozenset(q for p in s for q in delta.get((p, x), ()))
            if t not in names:
                names[t] = len(names)
                queue.append(t)
            arcs.append((names[s], x, names[t]))
    final = [i for s, i in names.items() if s & a.final]
    return Automaton(a.alphabet, len(names), [0], final, arcs)


def accepts_bruteforce(a: Automaton, word) -> bool:
    """Depth-first search for an accepting path with yield ``word`` (epsilon moves allowed)."""
    delta = _delta(a)
    word = tuple(word)
    seen = set()

    def search(q, i):
        if (q, i) in seen:
            return False
        seen.add((q, i))
        if i == len(word) and q in a.final:
            return True
        for r in delta.get((q, ""), ()):
            if search(r, i):
                return True
        if i < len(word):
            for r in delta.get((q, word[i]), ()):
                if search(r, i + 1):
                    return True
        return False

    return any(search(q, 0) for q in a.initial)


def word_weight_bruteforce(w: WeightedAutomaton, word):
    """Semifield sum over every accepting path of ``lambda * weights * rho``."""
    K = w.semifield
    word = tuple(word)
    arcs = {}
    for (p, x, q), weight in w.transitions.items():
        arcs.setdefault((p, x), []).append((weight, q))

    def paths(q, i):
        if i == len(word):
            return w.final.get(q, K.zero)
        total = K.zero
        for weight, r in arcs.get((q, word[i]), ()):
            total = K.plus(total, K.times(weight, paths(r, i + 1)))
        return total

    return K.sum(K.times(lam, paths(q, 0)) for q, lam in w.initial.items())


def words(alphabet, max_len: int):
    for length in range(max_len + 1):
        yield from product(alphabet, repeat=length)


def oracle_language_eq(x, y, max_len: int) -> bool:
    """Acceptance (or total weight) agrees on every word of length ``<= max_len``."""
    if x.alphabet != y.alphabet:
        raise ValueError("automata must share an alphabet")
    if isinstance(x, WeightedAutomaton) != isinstance(y, WeightedAutomaton):
        raise ValueError("cannot compare weighted with unweighted automata")
    if isinstance(x, WeightedAutomaton):
        K = x.semifield
        return all(K.eq(word_weight_bruteforce(x, u), word_weight_bruteforce(y, u))
                   for u in words(x.alphabet, max_len))
    return all(accepts_bruteforce(x, u) == accepts_bruteforce(y, u) for u in words(x.alphabet, max_len))


def oracle_index_period(array) -> tuple[int, int]:
    """Powers ``B, B^2, ...`` in numpy until one repeats; the first repeat gives (index, period)."""
    b = np.asarray(array, dtype=np.int64)
    seen = {}
    power = b.copy()
    k = 1
    while True:
        key = (power > 0).tobytes()
        if key in seen:
            return seen[key], k - seen[key]
        seen[key] = k
        power = ((power @ b) > 0).astype(np.int64)
        k += 1


def transitive_closure(array) -> np.ndarray:
    """Reachability by one or more steps (Warshall)."""
    r = np.asarray(array, dtype=bool).copy()
    for k in range(r.shape[0]):
        r |= np.outer(r[:, k], r[k, :])
    return r


def oracle_irreducible(array) -> bool:
    r = transitive_closure(array)
    n = r.shape[0]
    return n <= 1 or bool(np.all(r | np.eye(n, dtype=bool)))


def oracle_monoid_elements(mats) -> set[bytes]:
    """Closure under right multiplication, as a set of packed numpy matrices."""
    mats = [np.asarray(m, dtype=np.int64) for m in mats]
    n = mats[0].shape[0]
    ident = np.eye(n, dtype=np.int64)
    seen = {ident.astype(bool).tobytes()}
    todo = [ident]
    while todo:
        m = todo.pop()
        for g in mats:
            p = ((m @ g) > 0).astype(np.int64)
            key = p.astype(bool).tobytes()
            if key not in seen:
                seen.add(key)
                todo.append(p)
    return seen


def oracle_finite_tree_width(a: Automaton) -> bool:
    """No accessible transition ``(p, x, q)`` with ``|delta(p, x)| >= 2`` lies on a cycle.

    ``p -> q`` is on a cycle iff ``q`` reaches ``p``; checked with Warshall.
    """
    adj = np.zeros((a.n, a.n), dtype=bool)
    for p, _, q in a.transitions:
        adj[p, q] = True
    reach = transitive_closure(adj) | np.eye(a.n, dtype=bool)
    live = {q for i in a.initial for q in range(a.n) if reach[i, q]}
    delta = _delta(a)
    for (p, x), targets in delta.items():
        if p in live and len(targets) >= 2:
            if any(reach[q, p] for q in targets):
                return False
    return True


def count_paths(a: Automaton, word) -> int:
    """Number of paths from initial states with yield ``word``, by explicit enumeration."""
    delta = _delta(a)

    def count(q, i):
        if i == len(word):
            return 1
        return sum(count(r, i + 1) for r in delta.get((q, word[i]), ()))

    return sum(count(q, 0) for q in a.initial)


def oracle_tree_width(a: Automaton, max_len: int) -> int:
    """Largest path count over all words up to ``max_len``."""
    return max(count_paths(a, u) for u in words(a.alphabet, max_len))
