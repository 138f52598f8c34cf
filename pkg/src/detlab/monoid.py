"""Transition monoids of automata, Boolean and weighted.

Elements are enumerated breadth-first from the identity by right
multiplication with the generators, so the first word recorded for an element
is its shortlex-least generator word.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .boolmatrix import BoolMatrix, bool_matmul, vector_from_states  # noqa: F401  (re-export)
from .core import Automaton, WeightedAutomaton, transition_matrices
from .semifield import Semifield

WEIGHTED_DEFAULT_FUEL = 10_000


@dataclass
class MonoidClosure:
    elements: list
    generator_words: dict = field(repr=False)
    complete: bool

    @property
    def size(self) -> int:
        return len(self.elements)

    def __contains__(self, item) -> bool:
        return item in self.generator_words


def _labelled(gens) -> dict:
    if isinstance(gens, Mapping):
        return {k: gens[k] for k in sorted(gens)}
    return dict(enumerate(gens))


def _closure(identity: Hashable, gens: dict, right_mul: Callable, fuel: int, order: str) -> MonoidClosure:
    if order not in ("bfs", "dfs"):
        raise ValueError(f"order must be 'bfs' or 'dfs', got {order!r}")
    words = {identity: ()}
    elements = [identity]
    frontier = deque([identity])
    take = frontier.popleft if order == "bfs" else frontier.pop
    complete = True
    while frontier and complete:
        m = take()
        base = words[m]
        for label, g in gens.items():
            prod = right_mul(m, label, g)
            if prod in words:
                continue
            if len(elements) >= fuel:
                complete = False
                break
            words[prod] = base + (label,)
            elements.append(prod)
            frontier.append(prod)
    return MonoidClosure(elements, words, complete)


def default_bool_fuel(n: int) -> int:
    return 2 ** min(n * n, 24)


def monoid_closure(gens: Mapping[str, BoolMatrix] | Iterable[BoolMatrix], fuel: int | None = None,
                   order: str = "bfs", n: int | None = None) -> MonoidClosure:
    """Monoid generated by Boolean matrices ``gens`` together with the identity.

    ``gens`` may be a symbol -> matrix mapping (words are symbol tuples) or a
    plain sequence (words are index tuples).  ``complete`` is False when more
    than ``fuel`` elements would be needed.  ``n`` gives the dimension when
    there are no generators.
    """
    gens = _labelled(gens)
    dims = {g.n for g in gens.values()}
    if len(dims) > 1:
        raise ValueError(f"generators have mixed dimensions {sorted(dims)}")
    if dims:
        n = dims.pop()
    elif n is None:
        raise ValueError("dimension unknown: pass n when there are no generators")
    if fuel is None:
        fuel = default_bool_fuel(n)
    if n <= 16:
        tables = {k: g.image_table() for k, g in gens.items()}

        def right_mul(rows, label, _g):
            table = tables[label]
            return tuple([table[r] for r in rows])
    else:
        def right_mul(rows, _label, g):
            return tuple([g.image(r) for r in rows])

    raw = _closure(BoolMatrix.identity(n).rows, gens, right_mul, fuel, order)
    mats = [BoolMatrix(n, rows) for rows in raw.elements]
    words = {m: raw.generator_words[m.rows] for m in mats}
    return MonoidClosure(mats, words, raw.complete)


def morphism(a: Automaton, word: Sequence[str]) -> BoolMatrix:
    """Product of the transition matrices along ``word``; the identity for the empty word."""
    mats = transition_matrices(a)
    result = BoolMatrix.identity(a.n)
    for x in word:
        if x not in mats:
            raise KeyError(f"symbol {x!r} not in alphabet {a.alphabet}")
        result = result @ mats[x]
    return result


def accepts_via_monoid(a: Automaton, word: Sequence[str]) -> bool:
    """``I^T . morphism(word) . F != 0``."""
    image = morphism(a, word).image(vector_from_states(a.initial))
    return bool(image & vector_from_states(a.final))


# --- weighted matrices ---------------------------------------------------------

@dataclass(frozen=True)
class WeightedMatrix:
    """Dense square matrix over a semifield; hashable by its exact entries."""

    semifield: Semifield = field(compare=False, hash=False)
    n: int
    entries: tuple[tuple, ...]

    @classmethod
    def identity(cls, semifield: Semifield, n: int) -> WeightedMatrix:
        z, o = semifield.zero, semifield.one
        return cls(semifield, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: WeightedMatrix) -> WeightedMatrix:
        if other.n != self.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")
        K = self.semifield
        cols = list(zip(*other.entries))
        out = []
        for row in self.entries:
            nz = [(k, x) for k, x in enumerate(row) if not K.is_zero(x)]
            out.append(tuple(K.sum(K.times(x, col[k]) for k, x in nz) for col in cols))
        return WeightedMatrix(K, self.n, tuple(out))

    def support(self) -> BoolMatrix:
        K = self.semifield
        return BoolMatrix.from_pairs(self.n, ((i, j) for i, row in enumerate(self.entries)
                                              for j, x in enumerate(row) if not K.is_zero(x)))


def weighted_transition_matrices(w: WeightedAutomaton) -> dict[str, WeightedMatrix]:
    if w.has_epsilon():
        raise ValueError("transition matrices require an epsilon-free automaton")
    K = w.semifield
    grid = {x: [[K.zero] * w.n for _ in range(w.n)] for x in w.alphabet}
    for (p, x, q), weight in w.transitions.items():
        grid[x][p][q] = weight
    return {x: WeightedMatrix(K, w.n, tuple(map(tuple, g))) for x, g in grid.items()}


def weighted_monoid_closure(gens: Mapping[str, WeightedMatrix] | Iterable[WeightedMatrix],
                            fuel: int = WEIGHTED_DEFAULT_FUEL, order: str = "bfs",
                            semifield: Semifield | None = None, n: int | None = None) -> MonoidClosure:
    """Monoid generated by weighted matrices under semifield matrix product.

    An incomplete result means the monoid has more than ``fuel`` elements and
    may be infinite.
    """
    gens = _labelled(gens)
    first = next(iter(gens.values()), None)
    if first is not None:
        semifield, n = first.semifield, first.n
    if semifield is None or n is None:
        raise ValueError("pass semifield and n when there are no generators")
    if any(g.n != n for g in gens.values()):
        raise ValueError("generators have mixed dimensions")
    return _closure(WeightedMatrix.identity(semifield, n), gens, lambda m, _l, g: m @ g, fuel, order)
