"""On-the-fly determinization for unweighted and weighted automata.

Both constructions explore power states from the initial one with a LIFO
worklist and only materialise what is reachable.  A :class:`Fuel` budget caps
the number of power states; weighted determinization need not terminate, so
hitting the budget is reported rather than raised.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .boolmatrix import bits, popcount
from .core import Automaton, WeightedAutomaton

PowerState = tuple
"""Sorted tuple of state indices, or of ``(state, residual)`` pairs when weighted."""

WEIGHTED_DEFAULT_FUEL = 10_000


@dataclass(frozen=True)
class Fuel:
    max_power_states: int | None = None

    def __post_init__(self):
        if self.max_power_states is not None and self.max_power_states < 1:
            raise ValueError("max_power_states must be >= 1")


FuelLike = Union[Fuel, int, None]


def _budget(fuel: FuelLike, default: int) -> int:
    if isinstance(fuel, Fuel):
        fuel = fuel.max_power_states
    if fuel is None:
        return default
    if fuel < 1:
        raise ValueError("fuel must be >= 1")
    return fuel


@dataclass
class DetResult:
    det: Automaton | WeightedAutomaton
    state_map: dict[PowerState, int]
    steps: int
    transitions_considered: int
    terminated: bool

    @property
    def num_states(self) -> int:
        return self.det.n

    def stats(self) -> dict[str, object]:
        return {
            "steps": self.steps,
            "states": self.det.n,
            "transitions_considered": self.transitions_considered,
            "terminated": self.terminated,
        }


def determinize(a: Automaton, fuel: FuelLike = None) -> DetResult:
    """Subset construction restricted to reachable power states.

    The empty power state is kept as an explicit dead state, so the result is
    total.  ``transitions_considered`` counts the original transitions read
    while computing successors.  Default budget: ``10 * 2**min(n, 20)``.
    """
    if a.has_epsilon():
        raise ValueError("determinize requires an epsilon-free automaton; run remove_epsilon first")
    budget = _budget(fuel, 10 * 2 ** min(a.n, 20))
    succ = {x: [0] * a.n for x in a.alphabet}
    for p, x, q in a.transitions:
        succ[x][p] |= 1 << q
    out_degree = {x: [popcount(m) for m in succ[x]] for x in a.alphabet}

    start = 0
    for q in a.initial:
        start |= 1 << q
    index = {start: 0}
    order = [start]
    stack = [start]
    arcs = []
    steps = considered = 0
    terminated = True
    while stack and terminated:
        current = stack.pop()
        steps += 1
        src = index[current]
        for x in a.alphabet:
            table, degree = succ[x], out_degree[x]
            target = 0
            for q in bits(current):
                target |= table[q]
                considered += degree[q]
            dst = index.get(target)
            if dst is None:
                if len(order) >= budget:
                    terminated = False
                    break
                dst = index[target] = len(order)
                order.append(target)
                stack.append(target)
            arcs.append((src, x, dst))

    finals_mask = 0
    for q in a.final:
        finals_mask |= 1 << q
    final = [i for i, m in enumerate(order) if m & finals_mask]
    det = Automaton(a.alphabet, len(order), [0], final, arcs)
    state_map = {tuple(bits(m)): i for m, i in index.items()}
    return DetResult(det, state_map, steps, considered, terminated)


def determinize_weighted(w: WeightedAutomaton, fuel: FuelLike = None) -> DetResult:
    """Weighted on-the-fly determinization over a zero-sum-free commutative semifield.

    A power state maps states to residual weights.  The arc for symbol ``x``
    carries the sum ``w_x`` of all outgoing contributions, and the successor
    residuals are those contributions times ``w_x`` inverse.  The initial power
    state holds the initial weights unnormalised, with det initial weight one.
    Symbols with no successor produce no arc.
    """
    K = w.semifield
    if not K.zero_sum_free:
        raise ValueError(f"{K.name} semifield is not zero-sum-free")
    if w.has_epsilon():
        raise ValueError("determinize_weighted requires an epsilon-free automaton")
    budget = _budget(fuel, WEIGHTED_DEFAULT_FUEL)
    arcs_from = w.arcs

    start = tuple((q, r) for q, r in w.initial.items() if not K.is_zero(r))
    index = {start: 0}
    order = [start]
    stack = [start]
    det_arcs = {}
    steps = considered = 0
    terminated = True
    while stack and terminated:
        current = stack.pop()
        steps += 1
        src = index[current]
        for x in w.alphabet:
            contrib = {}
            for q, residual in current:
                for weight, q2 in arcs_from.get((q, x), ()):
                    considered += 1
                    v = K.times(residual, weight)
                    contrib[q2] = K.plus(contrib[q2], v) if q2 in contrib else v
            contrib = {q2: v for q2, v in contrib.items() if not K.is_zero(v)}
            if not contrib:
                continue
            w_x = K.sum(contrib.values())
            assert not K.is_zero(w_x), "normaliser vanished despite zero-sum-freeness"
            inv = K.inv(w_x)
            target = tuple(sorted((q2, K.times(v, inv)) for q2, v in contrib.items()))
            dst = index.get(target)
            if dst is None:
                if len(order) >= budget:
                    terminated = False
                    break
                dst = index[target] = len(order)
                order.append(target)
                stack.append(target)
            det_arcs[src, x, dst] = w_x

    final = {}
    for i, state in enumerate(order):
        rho = K.sum(K.times(r, w.final[q]) for q, r in state if q in w.final)
        if not K.is_zero(rho):
            final[i] = rho
    det = WeightedAutomaton(K, w.alphabet, len(order), {0: K.one}, final, det_arcs)
    return DetResult(det, dict(index), steps, considered, terminated)
