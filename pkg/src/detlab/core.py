"""Automata data model and the line-oriented ``.fsa`` text format.

States are dense indices ``0..n-1``.  Unweighted transition multisets are
collapsed to sets on construction; multiplicity plays no role in any
algorithm here.  The empty string is the epsilon label internally and ``EPS``
on disk.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Union

from .boolmatrix import BoolMatrix
from .semifield import BOOLEAN, Semifield, get_semifield

EPSILON = ""
EPS_TOKEN = "EPS"

Transition = tuple[int, str, int]


class AutomatonFormatError(ValueError):
    """Malformed ``.fsa`` text; ``lineno`` is 1-based (0 when not line-specific)."""

    def __init__(self, message: str, lineno: int = 0):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno else message)


def _check_state(q: int, n: int, what: str):
    if not (isinstance(q, int) and 0 <= q < n):
        raise ValueError(f"{what} references unknown state {q!r} (n={n})")


def _canonical_alphabet(alphabet: Iterable[str], labels: Iterable[str]) -> tuple[str, ...]:
    symbols = set(alphabet) | {x for x in labels if x != EPSILON}
    for s in symbols:
        if not s or any(c.isspace() for c in s) or s == EPS_TOKEN:
            raise ValueError(f"invalid alphabet symbol {s!r}")
    return tuple(sorted(symbols))


@dataclass(frozen=True)
class Automaton:
    """Unweighted FSA over states ``0..n-1``.

    Construction canonicalises: the alphabet is sorted and extended with every
    transition label, transitions become a set.
    """

    alphabet: tuple[str, ...]
    n: int
    initial: frozenset[int]
    final: frozenset[int]
    transitions: frozenset[Transition]

    def __init__(self, alphabet: Iterable[str], n: int, initial: Iterable[int],
                 final: Iterable[int], transitions: Iterable[Transition]):
        transitions = frozenset((int(p), str(a), int(q)) for p, a, q in transitions)
        initial = frozenset(initial)
        final = frozenset(final)
        for q in initial:
            _check_state(q, n, "init")
        for q in final:
            _check_state(q, n, "final")
        for p, _, q in transitions:
            _check_state(p, n, "transition")
            _check_state(q, n, "transition")
        object.__setattr__(self, "alphabet", _canonical_alphabet(alphabet, (a for _, a, _ in transitions)))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "initial", initial)
        object.__setattr__(self, "final", final)
        object.__setattr__(self, "transitions", transitions)

    @cached_property
    def successors(self) -> dict[tuple[int, str], frozenset[int]]:
        out = defaultdict(set)
        for p, a, q in self.transitions:
            out[p, a].add(q)
        return {k: frozenset(v) for k, v in out.items()}

    def has_epsilon(self) -> bool:
        return any(a == EPSILON for _, a, _ in self.transitions)

    def is_deterministic(self) -> bool:
        """Unique initial state, no epsilon, at most one successor per (state, symbol)."""
        return (
            len(self.initial) == 1
            and not self.has_epsilon()
            and all(len(v) <= 1 for v in self.successors.values())
        )


@dataclass(frozen=True)
class WeightedAutomaton:
    """WFSA over a commutative semifield.

    ``initial``/``final`` map states to their non-zero initial and final
    weights; ``transitions`` maps ``(src, label, dst)`` to a non-zero weight,
    so there is at most one transition per label between two states.
    """

    semifield: Semifield
    alphabet: tuple[str, ...]
    n: int
    initial: Mapping[int, object]
    final: Mapping[int, object]
    transitions: Mapping[Transition, object]

    def __init__(self, semifield: Semifield, alphabet: Iterable[str], n: int,
                 initial: Mapping[int, object], final: Mapping[int, object],
                 transitions: Mapping[Transition, object] | Iterable[tuple[int, str, object, int]]):
        if not isinstance(transitions, Mapping):
            table = {}
            for p, a, w, q in transitions:
                if (p, a, q) in table:
                    raise ValueError(f"duplicate weighted transition {(p, a, q)}")
                table[p, a, q] = w
            transitions = table
        for what, table in (("init", initial), ("final", final)):
            for q, w in table.items():
                _check_state(q, n, what)
                if semifield.is_zero(w):
                    raise ValueError(f"{what} weight of state {q} is zero")
        for (p, a, q), w in transitions.items():
            _check_state(p, n, "transition")
            _check_state(q, n, "transition")
            if semifield.is_zero(w):
                raise ValueError(f"transition {(p, a, q)} has zero weight")
        object.__setattr__(self, "semifield", semifield)
        object.__setattr__(self, "alphabet", _canonical_alphabet(alphabet, (a for _, a, _ in transitions)))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "initial", dict(sorted(initial.items())))
        object.__setattr__(self, "final", dict(sorted(final.items())))
        object.__setattr__(self, "transitions", dict(sorted(transitions.items())))

    def __eq__(self, other):
        if not isinstance(other, WeightedAutomaton):
            return NotImplemented
        return (
            self.semifield is other.semifield
            and self.alphabet == other.alphabet
            and self.n == other.n
            and self.initial == other.initial
            and self.final == other.final
            and self.transitions == other.transitions
        )

    __hash__ = None

    @cached_property
    def arcs(self) -> dict[tuple[int, str], list[tuple[object, int]]]:
        """``(src, label) -> [(weight, dst), ...]``."""
        out = defaultdict(list)
        for (p, a, q), w in self.transitions.items():
            out[p, a].append((w, q))
        return dict(out)

    def has_epsilon(self) -> bool:
        return any(a == EPSILON for _, a, _ in self.transitions)

    def skeleton(self) -> Automaton:
        """The unweighted automaton on the support."""
        return Automaton(self.alphabet, self.n, self.initial, self.final, self.transitions)

    def is_deterministic(self) -> bool:
        return self.skeleton().is_deterministic()


AnyAutomaton = Union[Automaton, WeightedAutomaton]


def weighted_from_automaton(a: Automaton, semifield: Semifield = BOOLEAN) -> WeightedAutomaton:
    """Lift ``a`` to ``semifield`` with every weight equal to one."""
    one = semifield.one
    return WeightedAutomaton(
        semifield, a.alphabet, a.n,
        {q: one for q in a.initial}, {q: one for q in a.final},
        {t: one for t in a.transitions},
    )


# --- text format -----------------------------------------------------------

def _parse_int(token: str, lineno: int, what: str) -> int:
    try:
        value = int(token)
    except ValueError:
        raise AutomatonFormatError(f"{what} must be an integer, got {token!r}", lineno) from None
    return value


def parse_automaton(text: str) -> AnyAutomaton:
    """Parse ``.fsa`` text.

    Returns an :class:`Automaton` for ``bool`` files and a
    :class:`WeightedAutomaton` otherwise.  Directives may appear in any order;
    ``#`` starts a comment.
    """
    header = None
    alphabet: list[str] = []
    inits, finals, trans = [], [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        kw, *args = line.split()
        if kw == "fsa":
            if header is not None:
                raise AutomatonFormatError("duplicate fsa header", lineno)
            if len(args) != 2:
                raise AutomatonFormatError("expected 'fsa <n_states> <semiring>'", lineno)
            n = _parse_int(args[0], lineno, "state count")
            if n < 0:
                raise AutomatonFormatError("state count must be non-negative", lineno)
            try:
                header = (n, get_semifield(args[1]))
            except ValueError as exc:
                raise AutomatonFormatError(str(exc), lineno) from None
        elif kw == "alphabet":
            alphabet.extend(args)
        elif kw in ("init", "final"):
            if len(args) not in (1, 2):
                raise AutomatonFormatError(f"expected '{kw} <state> [weight]'", lineno)
            (inits if kw == "init" else finals).append((lineno, args))
        elif kw == "trans":
            if len(args) not in (3, 4):
                raise AutomatonFormatError("expected 'trans <src> <label> [weight] <dst>'", lineno)
            trans.append((lineno, args))
        else:
            raise AutomatonFormatError(f"unknown directive {kw!r}", lineno)
    if header is None:
        raise AutomatonFormatError("missing 'fsa <n_states> <semiring>' header")
    n, semifield = header
    weighted = semifield is not BOOLEAN

    def state(token, lineno):
        q = _parse_int(token, lineno, "state")
        if not 0 <= q < n:
            raise AutomatonFormatError(f"unknown state {q} (automaton has {n} states)", lineno)
        return q

    def weight(args, lineno, expected_len):
        if not weighted:
            if len(args) != expected_len - 1:
                raise AutomatonFormatError("weights are only allowed for weighted semirings", lineno)
            return None
        if len(args) != expected_len:
            raise AutomatonFormatError(f"missing weight ({semifield.name} semiring)", lineno)
        token = args[1] if expected_len == 2 else args[2]
        try:
            w = semifield.parse(token)
        except ValueError as exc:
            raise AutomatonFormatError(str(exc), lineno) from None
        if semifield.is_zero(w):
            raise AutomatonFormatError("zero weight is illegal; omit the line instead", lineno)
        return w

    def label(token, lineno):
        if token == EPS_TOKEN:
            return EPSILON
        return token

    init_w, final_w = {}, {}
    for target, entries, what in ((init_w, inits, "init"), (final_w, finals, "final")):
        for lineno, args in entries:
            q = state(args[0], lineno)
            w = weight(args, lineno, 2)
            if weighted and q in target:
                raise AutomatonFormatError(f"duplicate {what} weight for state {q}", lineno)
            target[q] = w
    arcs = {}
    for lineno, args in trans:
        p = state(args[0], lineno)
        a = label(args[1], lineno)
        w = weight(args, lineno, 4)
        q = state(args[-1], lineno)
        if weighted and (p, a, q) in arcs:
            raise AutomatonFormatError(f"duplicate weighted transition {p} {args[1]} {q}", lineno)
        arcs[p, a, q] = w
    try:
        if not weighted:
            return Automaton(alphabet, n, init_w, final_w, arcs)
        return WeightedAutomaton(semifield, alphabet, n, init_w, final_w, arcs)
    except ValueError as exc:
        raise AutomatonFormatError(str(exc)) from None


def serialize_automaton(a: AnyAutomaton) -> str:
    """Canonical ``.fsa`` text: header, alphabet, then sorted init/final/trans lines.

    A :class:`WeightedAutomaton` over the Boolean semifield is written as a
    plain ``bool`` file, so it parses back as an :class:`Automaton`.
    """
    def lab(x):
        return EPS_TOKEN if x == EPSILON else x

    if isinstance(a, WeightedAutomaton) and a.semifield is not BOOLEAN:
        fmt = a.semifield.format
        lines = [f"fsa {a.n} {a.semifield.name}", " ".join(("alphabet",) + a.alphabet)]
        lines += [f"init {q} {fmt(w)}" for q, w in a.initial.items()]
        lines += [f"final {q} {fmt(w)}" for q, w in a.final.items()]
        lines += [f"trans {p} {lab(x)} {fmt(w)} {q}" for (p, x, q), w in a.transitions.items()]
    else:
        lines = [f"fsa {a.n} bool", " ".join(("alphabet",) + a.alphabet)]
        lines += [f"init {q}" for q in sorted(a.initial)]
        lines += [f"final {q}" for q in sorted(a.final)]
        lines += [f"trans {p} {lab(x)} {q}" for p, x, q in sorted(a.transitions)]
    return "\n".join(lines) + "\n"


# --- epsilon removal and transition relations --------------------------------

def epsilon_closure(a: Automaton, states: Iterable[int]) -> frozenset[int]:
    succ = a.successors
    seen = set(states)
    stack = list(seen)
    while stack:
        p = stack.pop()
        for q in succ.get((p, EPSILON), ()):
            if q not in seen:
                seen.add(q)
                stack.append(q)
    return frozenset(seen)


def remove_epsilon(a: Automaton) -> Automaton:
    """Equivalent epsilon-free automaton on the same state set.

    ``q --x--> r`` is added whenever some ``p`` in the closure of ``q`` has
    ``p --x--> r``; ``q`` becomes final when its closure meets ``F``.  The
    initial set is replaced by its closure.  Epsilon-free input is returned as is.
    """
    if not a.has_epsilon():
        return a
    closures = [epsilon_closure(a, (q,)) for q in range(a.n)]
    succ = a.successors
    transitions = set()
    for q in range(a.n):
        for p in closures[q]:
            for x in a.alphabet:
                for r in succ.get((p, x), ()):
                    transitions.add((q, x, r))
    final = {q for q in range(a.n) if closures[q] & a.final}
    return Automaton(a.alphabet, a.n, epsilon_closure(a, a.initial), final, transitions)


def transition_matrices(a: Automaton | WeightedAutomaton) -> dict[str, BoolMatrix]:
    """One Boolean matrix per symbol, entry ``(i, j)`` set iff ``i --x--> j``."""
    if isinstance(a, WeightedAutomaton):
        a = a.skeleton()
    if a.has_epsilon():
        raise ValueError("transition matrices require an epsilon-free automaton")
    rows = {x: [0] * a.n for x in a.alphabet}
    for p, x, q in a.transitions:
        rows[x][p] |= 1 << q
    return {x: BoolMatrix(a.n, tuple(r)) for x, r in rows.items()}
