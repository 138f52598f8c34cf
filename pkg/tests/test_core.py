import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from detlab import (
    BOOLEAN,
    TROPICAL,
    Automaton,
    AutomatonFormatError,
    BoolMatrix,
    WeightedAutomaton,
    parse_automaton,
    remove_epsilon,
    serialize_automaton,
    transition_matrices,
)
from detlab.core import EPSILON
from detlab.gen import gen_moore, gen_random, gen_tropical
from detlab.oracles import oracle_language_eq
from detlab.semifield import format_rational

MINIMAL = "fsa 2 bool\nalphabet a\ninit 0\nfinal 1\ntrans 0 a 1\n"


def test_parse_minimal():
    a = parse_automaton(MINIMAL)
    assert isinstance(a, Automaton)
    assert a.n == 2
    assert a.transitions == {(0, "a", 1)}
    assert a.initial == {0} and a.final == {1}


def test_serialize_minimal_is_canonical():
    assert serialize_automaton(parse_automaton(MINIMAL)) == MINIMAL


def test_parse_is_order_insensitive_and_ignores_comments():
    text = "# a comment\ntrans 0 a 1   # trailing\nfinal 1\n\nfsa 2 bool\ninit 0\n"
    assert parse_automaton(text) == parse_automaton(MINIMAL)


def test_moore_file_structure():
    a = parse_automaton(serialize_automaton(gen_moore(3)))
    assert a.n == 3
    assert a.alphabet == ("a", "b")
    assert a.initial == {0} and a.final == {2}
    assert a.transitions == {
        (0, "b", 0), (0, "a", 1),
        (1, "a", 2), (1, "b", 2),
        (2, "a", 0), (2, "a", 1),
    }


@pytest.mark.parametrize(
    "text, lineno",
    [
        ("fsa 3 bool\ntrans 0 a 5\n", 2),
        ("fsa 3 bool\ninit 0\nbogus 1\n", 3),
        ("fsa 3 bool\ninit x\n", 2),
        ("fsa 2 tropical\ninit 0\n", 2),
        ("fsa 2 tropical\ninit 0 abc\n", 2),
        ("fsa 2 tropical\ninit 0 inf\n", 2),
        ("fsa 2 bool\ninit 0 1\n", 2),
        ("fsa 2 tropical\ntrans 0 a 1 1\ntrans 0 a 2 1\n", 3),
        ("fsa 2 nope\n", 1),
    ],
)
def test_parse_errors_cite_line(text, lineno):
    with pytest.raises(AutomatonFormatError) as err:
        parse_automaton(text)
    assert err.value.lineno == lineno
    assert f"line {lineno}" in str(err.value)


def test_parse_requires_header():
    with pytest.raises(AutomatonFormatError, match="header"):
        parse_automaton("init 0\n")


def test_unweighted_duplicates_collapse():
    a = parse_automaton("fsa 2 bool\ntrans 0 a 1\ntrans 0 a 1\n")
    assert len(a.transitions) == 1


def test_alphabet_extended_by_labels():
    a = parse_automaton("fsa 2 bool\nalphabet z\ntrans 0 b 1\n")
    assert a.alphabet == ("b", "z")


def test_weighted_line_format():
    w = WeightedAutomaton(TROPICAL, "a", 2, {0: Fraction(0)}, {1: Fraction(0)}, {(0, "a", 1): Fraction(3, 2)})
    text = serialize_automaton(w)
    assert "trans 0 a 1.5 1" in text.splitlines()
    assert parse_automaton(text) == w


def test_weighted_rational_syntax():
    w = parse_automaton("fsa 2 tropical\ninit 0 1/3\nfinal 1 -2\ntrans 0 a 2/4 1\n")
    assert w.initial == {0: Fraction(1, 3)}
    assert w.transitions[0, "a", 1] == Fraction(1, 2)
    assert "init 0 1/3" in serialize_automaton(w)


@pytest.mark.parametrize("x, text", [(Fraction(3), "3"), (Fraction(-1, 4), "-0.25"), (Fraction(2, 3), "2/3"),
                                     (Fraction(1, 10), "0.1"), (Fraction(-7, 3), "-7/3")])
def test_format_rational(x, text):
    assert format_rational(x) == text
    assert TROPICAL.parse(text) == x


def test_weighted_zero_weight_rejected():
    with pytest.raises(ValueError):
        WeightedAutomaton(TROPICAL, "a", 2, {0: math.inf}, {}, {})


def test_roundtrip_moore2():
    a = gen_moore(2)
    assert parse_automaton(serialize_automaton(a)) == a


@given(st.integers(1, 6), st.integers(1, 3), st.integers(0, 2**64 - 1))
@settings(max_examples=60, deadline=None)
def test_roundtrip_random(n, sigma, seed):
    a = gen_random(n, sigma, seed)
    text = serialize_automaton(a)
    assert parse_automaton(text) == a
    assert serialize_automaton(parse_automaton(text)) == text


@given(st.integers(1, 5), st.integers(1, 3), st.integers(0, 2**64 - 1), st.booleans())
@settings(max_examples=40, deadline=None)
def test_roundtrip_tropical(n, sigma, seed, acyclic):
    w = gen_tropical(n, sigma, seed, acyclic=acyclic)
    assert parse_automaton(serialize_automaton(w)) == w


# --- epsilon removal ---------------------------------------------------------------

def test_epsilon_only_automaton():
    a = Automaton("", 2, [0], [1], [(0, EPSILON, 1)])
    b = remove_epsilon(a)
    assert 0 in b.final
    assert b.transitions == frozenset()
    assert not b.has_epsilon()


def test_epsilon_free_is_identity():
    a = gen_moore(4)
    assert remove_epsilon(a) is a


def test_epsilon_chain():
    a = Automaton("a", 3, [0], [2], [(0, EPSILON, 1), (1, "a", 2)])
    b = remove_epsilon(a)
    assert (0, "a", 2) in b.transitions
    assert oracle_language_eq(a, b, 4)


def test_eps_token_roundtrip():
    a = parse_automaton("fsa 2 bool\ninit 0\nfinal 1\ntrans 0 EPS 1\n")
    assert a.transitions == {(0, EPSILON, 1)}
    assert "trans 0 EPS 1" in serialize_automaton(a)


@st.composite
def eps_automata(draw):
    n = draw(st.integers(1, 8))
    labels = st.sampled_from(["a", "b", EPSILON])
    trans = draw(st.lists(st.tuples(st.integers(0, n - 1), labels, st.integers(0, n - 1)), max_size=14))
    init = draw(st.sets(st.integers(0, n - 1)))
    final = draw(st.sets(st.integers(0, n - 1)))
    return Automaton("ab", n, init, final, trans)


@given(eps_automata())
@settings(max_examples=80, deadline=None)
def test_remove_epsilon_preserves_language(a):
    b = remove_epsilon(a)
    assert not b.has_epsilon()
    assert oracle_language_eq(a, b, 6)


# --- transition matrices ---------------------------------------------------------------

def test_one_letter_cycle_matrix():
    a = Automaton("a", 2, [0], [], [(0, "a", 1), (1, "a", 0)])
    assert transition_matrices(a)["a"] == BoolMatrix.from_array([[0, 1], [1, 0]])


def test_moore3_a_matrix():
    a_mat = transition_matrices(gen_moore(3))["a"]
    assert a_mat == BoolMatrix.from_array([[0, 1, 0], [0, 0, 1], [1, 1, 0]])


def test_absent_symbol_is_zero_matrix():
    a = Automaton("ab", 2, [0], [], [(0, "a", 1)])
    assert transition_matrices(a)["b"].is_zero()


def test_transition_matrices_reject_epsilon():
    with pytest.raises(ValueError):
        transition_matrices(Automaton("a", 2, [0], [], [(0, EPSILON, 1)]))


@given(st.integers(1, 6), st.integers(1, 3), st.integers(0, 2**64 - 1))
@settings(max_examples=40, deadline=None)
def test_transition_matrices_injective(n, sigma, seed):
    a = gen_random(n, sigma, seed)
    mats = transition_matrices(a)
    rebuilt = {(i, x, j) for x, m in mats.items() for i, j in m.pairs()}
    assert rebuilt == a.transitions


# --- semifields ----------------------------------------------------------------------------

def _tropical_elements():
    return st.one_of(
        st.just(math.inf),
        st.fractions(min_value=-20, max_value=20, max_denominator=12),
    )


@pytest.mark.parametrize("K, elements", [
    (BOOLEAN, st.booleans()),
    (TROPICAL, _tropical_elements()),
])
def test_semifield_axioms(K, elements):
    @given(elements, elements, elements)
    @settings(max_examples=1000, deadline=None)
    def check(x, y, z):
        assert K.eq(K.plus(x, y), K.plus(y, x))
        assert K.eq(K.times(x, y), K.times(y, x))
        assert K.eq(K.plus(K.plus(x, y), z), K.plus(x, K.plus(y, z)))
        assert K.eq(K.times(K.times(x, y), z), K.times(x, K.times(y, z)))
        assert K.eq(K.times(x, K.plus(y, z)), K.plus(K.times(x, y), K.times(x, z)))
        assert K.eq(K.plus(x, K.zero), x)
        assert K.eq(K.times(x, K.one), x)
        assert K.is_zero(K.times(x, K.zero))
        if not K.is_zero(x):
            assert K.eq(K.times(x, K.inv(x)), K.one)
        if K.zero_sum_free and K.is_zero(K.plus(x, y)):
            assert K.is_zero(x) and K.is_zero(y)

    check()


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        TROPICAL.inv(math.inf)
    with pytest.raises(ZeroDivisionError):
        BOOLEAN.inv(False)
