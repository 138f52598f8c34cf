from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from detlab import (
    BOOLEAN,
    TROPICAL,
    Automaton,
    BoolMatrix,
    WeightedMatrix,
    accepts_via_monoid,
    bool_matmul,
    determinize,
    determinize_weighted,
    monoid_closure,
    morphism,
    transition_matrices,
    weighted_from_automaton,
    weighted_monoid_closure,
    weighted_transition_matrices,
)
from detlab.boolmatrix import bits
from detlab.gen import gen_moore, gen_random, tropical_two_branch
from detlab.oracles import accepts_bruteforce, oracle_monoid_elements
from detlab.rng import SplitMix64

# Fixture frozen from the independent numpy closure in detlab.oracles.
MOORE3_MONOID = 65


def cycle(n):
    return BoolMatrix.from_pairs(n, [(i, (i + 1) % n) for i in range(n)])


@st.composite
def bool_matrices(draw, n=None):
    n = n or draw(st.integers(1, 6))
    rows = draw(st.lists(st.integers(0, 2**n - 1), min_size=n, max_size=n))
    return BoolMatrix(n, tuple(rows))


def test_matmul_examples():
    x = BoolMatrix.from_array([[0, 1], [0, 0]])
    y = BoolMatrix.from_array([[0, 0], [1, 0]])
    assert bool_matmul(x, y) == BoolMatrix.from_array([[1, 0], [0, 0]])
    assert bool_matmul(y, x) == BoolMatrix.from_array([[0, 0], [0, 1]])
    assert bool_matmul(x, x).is_zero()


@given(bool_matrices(n=5), bool_matrices(n=5))
@settings(max_examples=200, deadline=None)
def test_matmul_matches_numpy(x, y):
    expected = (x.to_array().astype(int) @ y.to_array().astype(int)) > 0
    assert np.array_equal((x @ y).to_array().astype(bool), expected)


@given(bool_matrices(n=4), bool_matrices(n=4), bool_matrices(n=4))
@settings(max_examples=100, deadline=None)
def test_matmul_associative_with_identity(x, y, z):
    assert (x @ y) @ z == x @ (y @ z)
    assert x @ BoolMatrix.identity(4) == x == BoolMatrix.identity(4) @ x


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        BoolMatrix.identity(2) @ BoolMatrix.identity(3)


def test_cycle_monoid():
    closure = monoid_closure([cycle(4)])
    assert closure.complete
    assert closure.size == 4
    assert BoolMatrix.identity(4) in closure


def test_complete_matrix_monoid():
    closure = monoid_closure([BoolMatrix.ones(3)])
    assert closure.size == 2


def test_moore3_monoid():
    mats = transition_matrices(gen_moore(3))
    assert len(oracle_monoid_elements([m.to_array() for m in mats.values()])) == MOORE3_MONOID
    assert monoid_closure(mats).size == MOORE3_MONOID


def test_fuel_stops_closure():
    closure = monoid_closure(transition_matrices(gen_moore(4)), fuel=50)
    assert not closure.complete
    assert closure.size <= 50


def test_generator_words_are_witnesses_and_shortest():
    a = gen_moore(3)
    closure = monoid_closure(transition_matrices(a))
    lengths = {}
    for m in closure.elements:
        word = closure.generator_words[m]
        assert morphism(a, word) == m
        lengths[m] = len(word)
    assert closure.generator_words[BoolMatrix.identity(3)] == ()
    # BFS: no product of a shorter word is missing from the closure at that length
    for m in closure.elements:
        for x, g in transition_matrices(a).items():
            assert lengths[m @ g] <= lengths[m] + 1


@given(st.integers(1, 5), st.integers(1, 3), st.integers(0, 2**64 - 1))
@settings(max_examples=60, deadline=None)
def test_closure_matches_oracle_and_dfs(n, sigma, seed):
    mats = transition_matrices(gen_random(n, sigma, seed))
    bfs = monoid_closure(mats)
    dfs = monoid_closure(mats, order="dfs")
    assert set(bfs.elements) == set(dfs.elements)
    expected = oracle_monoid_elements([m.to_array() for m in mats.values()])
    assert {m.to_array().astype(bool).tobytes() for m in bfs.elements} == expected


def test_morphism_examples():
    a = gen_moore(2)
    mats = transition_matrices(a)
    assert morphism(a, ()) == BoolMatrix.identity(2)
    assert morphism(a, "a") == mats["a"]
    ab = morphism(a, "ab")
    paths = {(p, r) for p, x, q in a.transitions if x == "a" for q2, y, r in a.transitions if q2 == q and y == "b"}
    assert set(ab.pairs()) == paths
    with pytest.raises(KeyError):
        morphism(a, "z")


@given(st.integers(1, 5), st.integers(0, 2**64 - 1), st.text("ab", max_size=4), st.text("ab", max_size=4))
@settings(max_examples=80, deadline=None)
def test_morphism_is_homomorphism(n, seed, u, v):
    a = gen_random(n, 2, seed)
    assert morphism(a, u + v) == morphism(a, u) @ morphism(a, v)


def test_accepts_via_monoid_examples():
    assert accepts_via_monoid(gen_moore(2), "a")
    no_start = Automaton("a", 2, [], [1], [(0, "a", 1)])
    assert not any(accepts_via_monoid(no_start, "a" * k) for k in range(4))


def test_accepts_via_monoid_matches_search():
    rng = SplitMix64(7)
    a = gen_random(5, 2, 11)
    for _ in range(50):
        word = "".join("ab"[rng.below(2)] for _ in range(rng.below(7)))
        assert accepts_via_monoid(a, word) == accepts_bruteforce(a, word)


@given(st.integers(1, 6), st.integers(1, 3), st.integers(0, 2**64 - 1))
@settings(max_examples=60, deadline=None)
def test_det_states_are_orbit_of_initial(n, sigma, seed):
    a = gen_random(n, sigma, seed)
    closure = monoid_closure(transition_matrices(a))
    init = sum(1 << q for q in a.initial)
    orbit = {m.image(init) for m in closure.elements}
    result = determinize(a)
    power_states = {sum(1 << q for q in s) for s in result.state_map}
    assert power_states == orbit
    assert result.num_states <= closure.size


# --- weighted -------------------------------------------------------------------------------

def test_boolean_weighted_closure_size_matches():
    a = gen_moore(3)
    closure = weighted_monoid_closure(weighted_transition_matrices(weighted_from_automaton(a)))
    assert closure.complete
    assert closure.size == monoid_closure(transition_matrices(a)).size


def test_weighted_matmul_tropical():
    inf = TROPICAL.zero
    x = WeightedMatrix(TROPICAL, 2, ((Fraction(1), Fraction(4)), (inf, Fraction(0))))
    y = WeightedMatrix(TROPICAL, 2, ((Fraction(2), inf), (Fraction(1), Fraction(3))))
    assert (x @ y).entries == ((Fraction(3), Fraction(7)), (Fraction(1), Fraction(3)))
    assert x @ WeightedMatrix.identity(TROPICAL, 2) == x


def test_positive_diagonal_cycle_diverges():
    m = WeightedMatrix(TROPICAL, 1, ((Fraction(1),),))
    closure = weighted_monoid_closure([m], fuel=100)
    assert not closure.complete


def test_terminating_two_branch_closure():
    w = tropical_two_branch(divergent=False)
    closure = weighted_monoid_closure(weighted_transition_matrices(w))
    assert closure.complete
    assert closure.size == 5
    assert determinize_weighted(w).num_states <= closure.size + 1


def test_weighted_closure_needs_dimensions_without_generators():
    with pytest.raises(ValueError):
        weighted_monoid_closure({})
    assert weighted_monoid_closure({}, semifield=BOOLEAN, n=2).size == 1


def test_bits_helper():
    assert list(bits(0b1011)) == [0, 1, 3]
