"""Structural analyses of automata and the state-complexity bounds they imply.

Each detector certifies one sufficient condition for a small output of
on-the-fly determinization; :func:`predict_bounds` gathers the bounds that
apply and :func:`verify_bounds` checks them against an actual run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .boolmatrix import BoolMatrix, popcount
from .core import Automaton, transition_matrices
from .determinize import FuelLike, determinize
from .graph import component_ids, is_r_connected, perfect_matching, strongly_connected_components, vertex_disjoint_paths
from .monoid import monoid_closure

ANALYSIS_MONOID_FUEL = 200_000
TREE_WIDTH_FUEL = 100_000
EXHAUSTIVE_LIMIT = 20


class MatrixTooLargeError(ValueError):
    """An exhaustive check over all ``2**n`` vectors was refused."""


@dataclass(frozen=True)
class IndexPeriod:
    index: int
    period: int


@dataclass(frozen=True)
class TreeWidth:
    finite: bool
    value: int | None
    fuel_hit: bool


@dataclass
class BoundRow:
    rule: str
    bound: int | None
    applicable: bool
    passed: bool | None = None


@dataclass
class AnalysisReport:
    n: int
    sigma: int
    is_deterministic: bool
    one_letter: tuple[IndexPeriod, bool] | None
    irreducible: dict[str, bool]
    all_irreducible: bool
    commutative: bool
    indecomposability: dict[str, int]
    density: int
    tree_width: TreeWidth
    monoid_size: int | None
    binomial_tw_bound: int | None
    predicted_bounds: list[BoundRow]
    actual_det_states: int | None = None
    terminated: bool | None = None
    notes: list[str] = field(default_factory=list)

    def bound(self, rule: str) -> BoundRow:
        for row in self.predicted_bounds:
            if row.rule == rule:
                return row
        raise KeyError(rule)

    @property
    def ok(self) -> bool:
        """No applicable rule failed (unverified rules do not count as failures)."""
        return all(row.passed is not False for row in self.predicted_bounds)

    def tsv_rows(self) -> list[list[str]]:
        def cell(x):
            if x is None:
                return "-"
            if isinstance(x, bool):
                return "true" if x else "false"
            return str(x)

        return [
            [row.rule, cell(row.applicable), cell(row.bound), cell(self.actual_det_states), cell(row.passed)]
            for row in self.predicted_bounds
        ]

    def to_tsv(self, header: bool = True) -> str:
        lines = ["rule\tapplicable\tbound\tactual\tpass"] if header else []
        lines += ["\t".join(r) for r in self.tsv_rows()]
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        tw = self.tree_width
        lines = [
            f"n={self.n}",
            f"sigma={self.sigma}",
            f"deterministic={str(self.is_deterministic).lower()}",
        ]
        if self.one_letter is not None:
            ip, irr = self.one_letter
            lines.append(f"index={ip.index}")
            lines.append(f"period={ip.period}")
        lines += [
            f"all_irreducible={str(self.all_irreducible).lower()}",
            f"commutative={str(self.commutative).lower()}",
            "indecomposability=" + ",".join(f"{x}:{r}" for x, r in self.indecomposability.items()),
            f"density={self.density}",
            f"tree_width_finite={str(tw.finite).lower()}",
            f"tree_width={'-' if tw.value is None else tw.value}",
            f"tree_width_fuel_hit={str(tw.fuel_hit).lower()}",
            f"monoid_size={'-' if self.monoid_size is None else self.monoid_size}",
        ]
        if self.binomial_tw_bound is not None:
            lines.append(f"tree_width_binomial_sum={self.binomial_tw_bound}")
        if self.actual_det_states is not None:
            lines.append(f"actual_det_states={self.actual_det_states}")
        if self.terminated is not None:
            lines.append(f"terminated={str(self.terminated).lower()}")
        lines += [f"note: {note}" for note in self.notes]
        return "\n".join(lines) + "\n" + self.to_tsv()


# --- single-matrix properties ------------------------------------------------------

def markowsky_bound(n: int) -> int:
    return n * n - 2 * n + 2


def index_period(b: BoolMatrix) -> IndexPeriod:
    """Least ``k >= 1`` and then least ``d >= 1`` with ``B**(k+d) == B**k``.

    Floyd cycle detection on the orbit ``B, B**2, ...``; constant memory.
    """
    if b.n < 1:
        raise ValueError("index/period needs n >= 1")

    def step(m):
        return m @ b

    tortoise, hare = step(b), step(step(b))
    while tortoise != hare:
        tortoise, hare = step(tortoise), step(step(hare))
    mu = 0
    tortoise = b
    while tortoise != hare:
        tortoise, hare = step(tortoise), step(hare)
        mu += 1
    period = 1
    hare = step(tortoise)
    while tortoise != hare:
        hare = step(hare)
        period += 1
    result = IndexPeriod(mu + 1, period)
    assert result.index <= markowsky_bound(b.n), f"index {result.index} exceeds Markowsky bound"
    return result


def is_irreducible(b: BoolMatrix) -> bool:
    """Precedence graph strongly connected."""
    return len(strongly_connected_components(b.rows)) <= 1


def _with_ones_on_diagonal(b: BoolMatrix) -> BoolMatrix | None:
    """Column permutation of ``b`` with a full diagonal, or None when no perfect matching exists."""
    if b.has_full_diagonal():
        return b
    match = perfect_matching(b.rows)
    if match is None:
        return None
    new_col = {old: new for new, old in enumerate(match)}
    return BoolMatrix.from_pairs(b.n, ((i, new_col[j]) for i, j in b.pairs()))


def indecomposability(b: BoolMatrix, r: int) -> bool:
    """Whether ``b`` is ``r``-indecomposable (``r >= 1``).

    Indecomposability is invariant under independent row and column
    permutations, so the columns are first permuted along a perfect matching
    to put ones on the diagonal; then ``r``-indecomposability is
    ``r``-connectivity of the precedence graph.  Without a perfect matching
    ``b`` has an ``s x t`` zero block with ``s + t > n`` and the answer is False.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    d = _with_ones_on_diagonal(b)
    if d is None:
        return False
    return is_r_connected(d.rows, r)


def max_indecomposability(b: BoolMatrix) -> int:
    """Largest ``r`` in ``[1, n-1]`` for which ``b`` is ``r``-indecomposable, else 0."""
    n = b.n
    if n < 2:
        return 0
    d = _with_ones_on_diagonal(b)
    if d is None:
        return 0
    # a single-vertex vector caps r at (row size - 1) unless the row is full
    best = n - 1
    for r in d.rows:
        if popcount(r) < n:
            best = min(best, popcount(r) - 1)
    for u in range(n):
        for v in range(n):
            if best <= 0:
                return 0
            if u != v and not d.rows[u] >> v & 1:
                best = min(best, vertex_disjoint_paths(d.rows, u, v, limit=best))
    return max(best, 0)


def indecomposable_by_vectors(b: BoolMatrix, r: int) -> bool:
    """``|vB| >= min(n, |v| + r)`` for every non-zero 0/1 row vector ``v``; exhaustive."""
    n = b.n
    if n > EXHAUSTIVE_LIMIT:
        raise MatrixTooLargeError(f"matrix-too-large-for-exact-check: n={n} > {EXHAUSTIVE_LIMIT}")
    table = b.image_table()
    for v in range(1, 1 << n):
        if popcount(table[v]) < min(n, popcount(v) + r):
            return False
    return True


def is_commutative(mats: Iterable[BoolMatrix]) -> bool:
    mats = list(mats)
    return all(x @ y == y @ x for x, y in combinations(mats, 2))


# --- tree width ----------------------------------------------------------------------

def accessible_states(a: Automaton) -> frozenset[int]:
    seen = set(a.initial)
    stack = list(seen)
    out = {}
    for p, _, q in a.transitions:
        out.setdefault(p, []).append(q)
    while stack:
        p = stack.pop()
        for q in out.get(p, ()):
            if q not in seen:
                seen.add(q)
                stack.append(q)
    return frozenset(seen)


def has_nondeterministic_cycle(a: Automaton) -> bool:
    """Some accessible cycle uses a transition ``(p, x, q)`` where ``p`` has several ``x``-successors."""
    live = accessible_states(a)
    adj = [0] * a.n
    for p, _, q in a.transitions:
        if p in live and q in live:
            adj[p] |= 1 << q
    comp = component_ids(adj)
    for (p, x), targets in a.successors.items():
        if p in live and len(targets) >= 2:
            if any(comp[q] == comp[p] for q in targets):
                return True
    return False


def tree_width_analysis(a: Automaton, fuel: int | None = None) -> TreeWidth:
    """Finiteness of the tree width and, when finite, its exact value.

    The value is the largest number of paths from initial states sharing one
    yield.  Path-count vectors are explored breadth-first over all words
    until no new vector appears; ``fuel`` caps the number of vectors.
    """
    if a.has_epsilon():
        raise ValueError("tree width analysis requires an epsilon-free automaton")
    if has_nondeterministic_cycle(a):
        return TreeWidth(False, None, False)
    if fuel is None:
        fuel = TREE_WIDTH_FUEL
    succ = {x: [sorted(a.successors.get((p, x), ())) for p in range(a.n)] for x in a.alphabet}
    start = tuple(1 if q in a.initial else 0 for q in range(a.n))
    seen = {start}
    frontier = [start]
    best = sum(start)
    while frontier:
        nxt = []
        for vec in frontier:
            for x in a.alphabet:
                out = [0] * a.n
                for p, c in enumerate(vec):
                    if c:
                        for q in succ[x][p]:
                            out[q] += c
                out = tuple(out)
                if out in seen:
                    continue
                if len(seen) >= fuel:
                    return TreeWidth(True, None, True)
                seen.add(out)
                nxt.append(out)
                best = max(best, sum(out))
        frontier = nxt
    return TreeWidth(True, best, False)


# --- bounds ----------------------------------------------------------------------------

def one_letter_bound(n: int) -> int:
    return n * n - n + 2


def commutative_bound(n: int, sigma: int) -> int:
    return n ** (2 * sigma)


def indecomposable_bound(n: int, sigma: int, r: int) -> int:
    """``floor(sigma**ceil((n-1)/r) / (sigma-1)) + 1``; ``ceil((n-1)/r) + 1`` for one letter."""
    c = -(-(n - 1) // r)
    if sigma == 1:
        return c + 1
    return sigma**c // (sigma - 1) + 1


def tree_width_bound(n: int, k: int) -> int:
    """``floor(n**k / (k-1)!) + 1``."""
    return n**k // math.factorial(k - 1) + 1


def binomial_tree_width_bound(n: int, k: int) -> int:
    """Number of subsets of at most ``k`` states."""
    return sum(math.comb(n, i) for i in range(k + 1))


def predict_bounds(a: Automaton, monoid_fuel: int = ANALYSIS_MONOID_FUEL,
                   tree_width_fuel: int | None = None) -> AnalysisReport:
    """Run every detector on ``a`` and list each bound with its applicability.

    Rules: ``one_letter_irreducible``, ``commutative_irreducible``,
    ``r_indecomposable``, ``tree_width`` and the always-applicable
    ``universal`` (``2**n``, or the monoid size when the closure completes).
    """
    if a.has_epsilon():
        raise ValueError("predict_bounds requires an epsilon-free automaton")
    n, sigma = a.n, len(a.alphabet)
    mats = transition_matrices(a)
    notes = []

    irreducible = {x: is_irreducible(m) for x, m in mats.items()}
    all_irreducible = all(irreducible.values())
    commutative = is_commutative(mats.values())
    indecomp = {x: max_indecomposability(m) for x, m in mats.items()}
    density = min((m.nnz() for m in mats.values()), default=0)
    one_letter = None
    if sigma == 1 and n >= 1:
        (m,) = mats.values()
        one_letter = (index_period(m), irreducible[a.alphabet[0]])
    tw = tree_width_analysis(a, tree_width_fuel)
    closure = monoid_closure(mats, fuel=monoid_fuel, n=n)
    monoid_size = closure.size if closure.complete else None
    if not closure.complete:
        notes.append(f"transition monoid exceeds {monoid_fuel} elements; universal bound uses 2^n")

    rows = []
    rows.append(BoundRow("one_letter_irreducible", one_letter_bound(n),
                         sigma == 1 and all_irreducible))
    rows.append(BoundRow("commutative_irreducible", commutative_bound(n, sigma),
                         n >= 2 and commutative and all_irreducible))
    r = min(indecomp.values(), default=0)
    rows.append(BoundRow("r_indecomposable", indecomposable_bound(n, sigma, r) if r >= 1 else None,
                         sigma >= 1 and r >= 1))
    binom = None
    tw_applicable = tw.finite and tw.value is not None and 1 <= tw.value <= n - 1
    if tw_applicable:
        k = tw.value
        binom = binomial_tree_width_bound(n, k)
        stated = tree_width_bound(n, k)
        if stated < binom:
            notes.append(f"tree-width formula {stated} is below the binomial count {binom}")
    rows.append(BoundRow("tree_width", tree_width_bound(n, tw.value) if tw_applicable else None, tw_applicable))
    universal = 2**n if monoid_size is None else min(2**n, monoid_size)
    rows.append(BoundRow("universal", universal, True))
    if tw.finite:
        notes.append("tree width regime: bounded by a constant")
    else:
        notes.append("tree width regime: unbounded (a nondeterministic transition lies on a cycle)")

    return AnalysisReport(
        n=n, sigma=sigma, is_deterministic=a.is_deterministic(), one_letter=one_letter,
        irreducible=irreducible, all_irreducible=all_irreducible, commutative=commutative,
        indecomposability=indecomp, density=density, tree_width=tw, monoid_size=monoid_size,
        binomial_tw_bound=binom, predicted_bounds=rows, notes=notes,
    )


def verify_bounds(a: Automaton, fuel: FuelLike = None, **kwargs) -> AnalysisReport:
    """:func:`predict_bounds` plus an actual determinization; fills ``passed`` per applicable rule.

    When the determinization runs out of fuel nothing is asserted and
    ``passed`` stays None.
    """
    report = predict_bounds(a, **kwargs)
    result = determinize(a, fuel)
    report.terminated = result.terminated
    if not result.terminated:
        report.notes.append("determinization hit its fuel limit; bounds unverified")
        return report
    report.actual_det_states = result.det.n
    for row in report.predicted_bounds:
        if row.applicable:
            row.passed = row.bound >= result.det.n
    return report
