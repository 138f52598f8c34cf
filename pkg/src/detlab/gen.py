"""Seeded generators for the automaton families the bounds talk about.

Every generator is a pure function of its arguments; randomness comes from
:class:`~detlab.rng.SplitMix64` so outputs are reproducible across
implementations.  Generated automata use states ``0..n-1`` and the alphabet
``a, b, c, ...``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .analysis import indecomposability
from .boolmatrix import BoolMatrix
from .core import Automaton, WeightedAutomaton
from .rng import SplitMix64
from .semifield import TROPICAL

FAMILIES = ("moore", "one_letter_irreducible", "commutative", "indecomposable", "dense", "finite_tw", "random")


class GenerationError(ValueError):
    pass


def symbols(sigma: int) -> tuple[str, ...]:
    if sigma <= 26:
        return tuple(chr(ord("a") + i) for i in range(sigma))
    return tuple(f"s{i}" for i in range(sigma))


def _from_matrices(alphabet, mats, initial, final) -> Automaton:
    n = next(iter(mats)).n if mats else 0
    transitions = [(i, x, j) for x, m in zip(alphabet, mats) for i, j in m.pairs()]
    return Automaton(alphabet, n, initial, final, transitions)


def _check_n(n: int):
    if n < 2:
        raise GenerationError(f"n must be >= 2, got {n}")


def gen_moore(n: int) -> Automaton:
    """Moore's automaton: ``b``-loop on the first state, an ``a,b`` chain and two ``a`` back edges.

    States ``q1..qn`` are ``0..n-1``; initial ``{q1}``, final ``{qn}``.
    """
    _check_n(n)
    last = n - 1
    t = [(0, "b", 0), (0, "a", 1)]
    for i in range(1, last):
        t += [(i, "a", i + 1), (i, "b", i + 1)]
    t += [(last, "a", 0), (last, "a", 1)]
    return Automaton("ab", n, [0], [last], t)


def _random_irreducible(rng: SplitMix64, n: int) -> BoolMatrix:
    """Hamiltonian cycle through a random permutation plus up to ``n`` random edges."""
    order = rng.permutation(n)
    pairs = [(order[i], order[(i + 1) % n]) for i in range(n)]
    for _ in range(rng.below(n + 1)):
        pairs.append((rng.below(n), rng.below(n)))
    return BoolMatrix.from_pairs(n, pairs)


def gen_one_letter_irreducible(n: int, seed: int) -> Automaton:
    _check_n(n)
    rng = SplitMix64(seed)
    m = _random_irreducible(rng, n)
    return _from_matrices(("a",), [m], rng.nonempty_subset(n), rng.nonempty_subset(n))


def gen_commutative(n: int, sigma: int, seed: int) -> Automaton:
    """First symbol gets a random irreducible matrix, the others random powers ``1..2n`` of it.

    Later symbols are not necessarily irreducible themselves.
    """
    _check_n(n)
    if sigma < 2:
        raise GenerationError("commutative family needs sigma >= 2")
    rng = SplitMix64(seed)
    base = _random_irreducible(rng, n)
    mats = [base] + [base ** rng.randint(1, 2 * n) for _ in range(sigma - 1)]
    return _from_matrices(symbols(sigma), mats, rng.nonempty_subset(n), rng.nonempty_subset(n))


def indecomposable_density(n: int, r: int, slack: float = 0.5) -> int:
    """Non-zero count ``min(n*n, ceil((1 + slack + r) * n * ln n))``."""
    return min(n * n, math.ceil((1 + slack + r) * n * math.log(n)))


def gen_indecomposable(n: int, sigma: int, r: int, seed: int, max_tries: int = 100) -> Automaton:
    """Every transition matrix has a full diagonal plus random cells and is certified ``r``-indecomposable.

    Matrices are resampled until certified; after ``max_tries`` failures for one
    symbol a :class:`GenerationError` reports the density tried.
    """
    _check_n(n)
    if not 1 <= r <= n - 1:
        raise GenerationError(f"r must lie in [1, {n - 1}], got {r}")
    rng = SplitMix64(seed)
    nnz = indecomposable_density(n, r)
    off_diagonal = [(i, j) for i in range(n) for j in range(n) if i != j]
    mats = []
    for x in symbols(sigma):
        for _ in range(max_tries):
            picks = rng.sample(len(off_diagonal), nnz - n)
            m = BoolMatrix.from_pairs(n, [(i, i) for i in range(n)] + [off_diagonal[k] for k in picks])
            if indecomposability(m, r):
                mats.append(m)
                break
        else:
            raise GenerationError(
                f"no {r}-indecomposable matrix for symbol {x!r} after {max_tries} tries "
                f"at density {nnz}/{n * n}"
            )
    return _from_matrices(symbols(sigma), mats, rng.nonempty_subset(n), rng.nonempty_subset(n))


def _fixed_count_matrix(rng: SplitMix64, n: int, nnz: int) -> BoolMatrix:
    cells = rng.sample(n * n, nnz)
    return BoolMatrix.from_pairs(n, (divmod(c, n) for c in cells))


def gen_dense(n: int, sigma: int, d: float, seed: int, correlated: bool = False) -> Automaton:
    """Each transition matrix uniform among those with exactly ``floor(n*n/d)`` non-zeros.

    With ``correlated`` every symbol reuses the first symbol's matrix.
    """
    _check_n(n)
    if d < 1:
        raise GenerationError(f"d must be >= 1, got {d}")
    nnz = math.floor(n * n / d)
    if nnz < n:
        raise GenerationError(f"n^2/d = {n * n / d:g} non-zeros is below n = {n}")
    rng = SplitMix64(seed)
    first = _fixed_count_matrix(rng, n, nnz)
    mats = [first] + [first if correlated else _fixed_count_matrix(rng, n, nnz) for _ in range(sigma - 1)]
    return _from_matrices(symbols(sigma), mats, rng.nonempty_subset(n), rng.nonempty_subset(n))


def gen_finite_tw(n: int, k: int, seed: int, sigma: int = 2) -> Automaton:
    """Automaton of tree width at most ``k`` with no nondeterminism on any cycle.

    States ``0..c-1`` (``c = n // 2``) form an acyclic chain, the rest a
    deterministic backbone cycled by the first symbol.  The chain is total
    and deterministic; ``k - 1`` extra edges from chain states into the
    backbone duplicate an existing label.  Each extra edge adds at most one
    path per word, so no word has more than ``k`` paths.
    """
    _check_n(n)
    if not 1 <= k <= n - 1:
        raise GenerationError(f"k must lie in [1, {n - 1}], got {k}")
    if sigma < 1:
        raise GenerationError("sigma must be >= 1")
    c = n // 2
    if k - 1 > c * sigma:
        raise GenerationError(f"k={k} needs {k - 1} branchings but only {c * sigma} chain slots exist")
    rng = SplitMix64(seed)
    alphabet = symbols(sigma)
    backbone = list(range(c, n))
    m = len(backbone)
    edges = {}
    for i in range(c):
        for idx, x in enumerate(alphabet):
            edges[i, x] = i + 1 if idx == 0 else rng.randint(i + 1, n - 1)
    for pos, b in enumerate(backbone):
        edges[b, alphabet[0]] = backbone[(pos + 1) % m]
        for x in alphabet[1:]:
            if rng.below(2):
                edges[b, x] = backbone[rng.below(m)]
    transitions = [(p, x, q) for (p, x), q in edges.items()]
    slots = [(i, x) for i in range(c) for x in alphabet]
    for s in rng.sample(len(slots), k - 1):
        p, x = slots[s]
        choices = [b for b in backbone if b != edges[p, x]]
        transitions.append((p, x, choices[rng.below(len(choices))]))
    return Automaton(alphabet, n, [0], rng.nonempty_subset(n), transitions)


def gen_random(n: int, sigma: int, seed: int, density: float | None = None) -> Automaton:
    """Each cell of each transition matrix set independently with probability ``density``.

    Without ``density`` one is drawn per automaton from ``[1/n, 0.5)``.
    """
    if n < 1:
        raise GenerationError("n must be >= 1")
    rng = SplitMix64(seed)
    if density is None:
        density = 1 / n + rng.random() * (0.5 - 1 / n) if n > 2 else 0.5 * rng.random()
    alphabet = symbols(sigma)
    transitions = [(i, x, j) for x in alphabet for i in range(n) for j in range(n) if rng.random() < density]
    return Automaton(alphabet, n, rng.nonempty_subset(n), rng.nonempty_subset(n), transitions)


def gen_tropical(n: int, sigma: int, seed: int, acyclic: bool = False, density: float = 0.35,
                 max_weight: int = 5) -> WeightedAutomaton:
    """Random tropical WFSA with non-negative rational weights ``p/2``, ``0 <= p <= 2*max_weight``.

    ``acyclic`` keeps only edges ``i -> j`` with ``i < j``; such automata always
    determinize.
    """
    if n < 1:
        raise GenerationError("n must be >= 1")
    rng = SplitMix64(seed)

    def weight():
        return Fraction(rng.randint(0, 2 * max_weight), 2)

    arcs = {}
    for x in symbols(sigma):
        for i in range(n):
            for j in range(i + 1 if acyclic else 0, n):
                if rng.random() < density:
                    arcs[i, x, j] = weight()
    initial = {q: weight() for q in rng.nonempty_subset(n)}
    final = {q: weight() for q in rng.nonempty_subset(n)}
    return WeightedAutomaton(TROPICAL, symbols(sigma), n, initial, final, arcs)


def tropical_two_branch(divergent: bool = True) -> WeightedAutomaton:
    """Four-state tropical WFSA: ``0 -a/1-> 1``, ``0 -a/3-> 2``, ``1,2 -b/0-> 3``.

    With ``divergent`` the branches also carry ``c``-loops of weight 1 and 2,
    so after ``a c^k`` the residual gap is ``2 + k`` and never repeats.
    """
    one = Fraction(0)
    arcs = {(0, "a", 1): Fraction(1), (0, "a", 2): Fraction(3), (1, "b", 3): one, (2, "b", 3): one}
    if divergent:
        arcs[1, "c", 1] = Fraction(1)
        arcs[2, "c", 2] = Fraction(2)
    return WeightedAutomaton(TROPICAL, "abc" if divergent else "ab", 4, {0: one}, {3: one}, arcs)


@dataclass(frozen=True)
class GenSpec:
    family: str
    n: int
    sigma: int = 2
    seed: int = 0
    params: dict = field(default_factory=dict, hash=False)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise GenerationError(f"unknown family {self.family!r}; expected one of {', '.join(FAMILIES)}")


def generate(spec: GenSpec) -> Automaton:
    p = spec.params
    if spec.family == "moore":
        return gen_moore(spec.n)
    if spec.family == "one_letter_irreducible":
        return gen_one_letter_irreducible(spec.n, spec.seed)
    if spec.family == "commutative":
        return gen_commutative(spec.n, spec.sigma, spec.seed)
    if spec.family == "indecomposable":
        return gen_indecomposable(spec.n, spec.sigma, p.get("r", 1), spec.seed, p.get("max_tries", 100))
    if spec.family == "dense":
        return gen_dense(spec.n, spec.sigma, p.get("d", 2), spec.seed, p.get("correlated", False))
    if spec.family == "finite_tw":
        return gen_finite_tw(spec.n, p.get("k", 1), spec.seed, spec.sigma)
    return gen_random(spec.n, spec.sigma, spec.seed, p.get("density"))
