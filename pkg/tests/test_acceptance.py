"""Acceptance criteria, each at its exact tolerance and runtime budget.

Every test prints one ``PASS``/``FAIL`` line (visible with ``pytest -s`` or
in the ``-v`` log) before asserting.
"""

import math
import time
from functools import reduce
from itertools import product

import pytest

from detlab import (
    BoolMatrix,
    determinize,
    determinize_weighted,
    index_period,
    indecomposability,
    indecomposable_by_vectors,
    is_irreducible,
    monoid_closure,
    transition_matrices,
    tree_width_analysis,
    weighted_monoid_closure,
    weighted_transition_matrices,
)
from detlab.analysis import binomial_tree_width_bound, markowsky_bound, one_letter_bound, tree_width_bound
from detlab.gen import (
    gen_commutative,
    gen_dense,
    gen_finite_tw,
    gen_indecomposable,
    gen_moore,
    gen_one_letter_irreducible,
    gen_random,
    gen_tropical,
    tropical_two_branch,
)
from detlab.oracles import (
    oracle_finite_tree_width,
    oracle_index_period,
    oracle_language_eq,
    oracle_powerset,
)
from detlab.rng import SplitMix64

from conftest import CORPUS


@pytest.fixture
def verdict(capsys):
    def emit(label, ok, started, budget, detail=""):
        elapsed = time.perf_counter() - started
        passed = ok and elapsed < budget
        with capsys.disabled():
            print(f"\n{'PASS' if passed else 'FAIL'} {label}: {detail} [{elapsed:.2f}s / {budget}s]")
        assert ok, detail
        assert elapsed < budget, f"{label} took {elapsed:.2f}s, budget {budget}s"

    return emit


def random_matrix(rng, n, full_diagonal=False):
    rows = [rng.below(1 << n) for _ in range(n)]
    if full_diagonal:
        rows = [r | 1 << i for i, r in enumerate(rows)]
    return BoolMatrix(n, tuple(rows))


def test_01_moore_blowup(verdict):
    t0 = time.perf_counter()
    bad = []
    for n in range(2, 13):
        a = gen_moore(n)
        states = determinize(a).num_states
        if not (states >= 2**n and states == oracle_powerset(a).n == 2**n):
            bad.append((n, states))
    verdict("1 moore blow-up", not bad, t0, 10, f"n=2..12 exact 2^n, mismatches={bad}")


def test_02_monoid_bound(verdict):
    t0 = time.perf_counter()
    rng = SplitMix64(2)
    bad = []
    for i in range(200):
        a = gen_random(1 + rng.below(6), 1 + rng.below(3), rng.next_u64())
        closure = monoid_closure(transition_matrices(a))
        states = determinize(a).num_states
        if not closure.complete or states > closure.size:
            bad.append(i)
    verdict("2 |Q_det| <= |M(A)|", not bad, t0, 60, f"200 automata, violations={bad}")


def test_03_one_letter(verdict):
    t0 = time.perf_counter()
    bad = []
    for seed in range(200):
        n = 3 + seed % 28
        a = gen_one_letter_irreducible(n, seed)
        ip = index_period(transition_matrices(a)["a"])
        states = determinize(a).num_states
        if states > one_letter_bound(n) or ip.period > n or ip.index > markowsky_bound(n):
            bad.append((seed, n, states, ip))
    verdict("3 one-letter n^2-n+2", not bad, t0, 60, f"200 seeds n=3..30, violations={bad}")


def test_04_index_period_oracle(verdict):
    t0 = time.perf_counter()
    rng = SplitMix64(4)
    bad = []
    for i in range(500):
        b = random_matrix(rng, 1 + rng.below(6))
        ip = index_period(b)
        if (ip.index, ip.period) != oracle_index_period(b.to_array()):
            bad.append(i)
    verdict("4 index/period oracle", not bad, t0, 30, f"500 matrices, mismatches={bad}")


def test_05_commutative(verdict):
    t0 = time.perf_counter()
    checked, seed, bad = 0, 0, []
    while checked < 100:
        n = 2 + seed % 4
        a = gen_commutative(n, 2, seed)
        seed += 1
        if not all(is_irreducible(m) for m in transition_matrices(a).values()):
            continue
        checked += 1
        states = determinize(a).num_states
        if states > n**4:
            bad.append((seed - 1, states))
    verdict("5 commutative n^(2|S|)", not bad, t0, 60,
            f"100 all-irreducible cases from {seed} seeds, violations={bad}")


def test_06_indecomposability(verdict):
    t0 = time.perf_counter()
    rng = SplitMix64(6)
    bad = []
    for i in range(300):
        b = random_matrix(rng, 2 + rng.below(9), full_diagonal=True)
        for r in (1, 2, 3):
            if indecomposability(b, r) != indecomposable_by_vectors(b, r):
                bad.append((i, r))
    verdict("6 flow vs exhaustive", not bad, t0, 120, f"300 matrices x r=1..3, mismatches={bad}")


def test_07_indecomposable_monoid(verdict):
    t0 = time.perf_counter()
    n, r = 8, 2
    c = math.ceil((n - 1) / r)
    limit = 2**c // 1 + 1
    bad = []
    for seed in range(100):
        mats = list(transition_matrices(gen_indecomposable(n, 2, r, seed)).values())
        size = monoid_closure(mats).size
        saturated = all(reduce(lambda x, y: x @ y, (mats[i] for i in w)).is_ones()
                        for w in product(range(2), repeat=c))
        if size > limit or not saturated:
            bad.append((seed, size, saturated))
    verdict("7 indecomposable monoid <= 17", not bad, t0, 60, f"100 seeds, violations={bad}")


def test_08_dense(verdict):
    t0 = time.perf_counter()
    n, d, sigma = 10, 2, 2
    bound = 2 * sigma ** (d * math.log2(n) + 1)
    sizes = [determinize(gen_dense(n, sigma, d, seed)).num_states for seed in range(200)]
    fraction = sum(s <= bound for s in sizes) / len(sizes)
    # 0.9 is a harness threshold for "with high probability"
    verdict("8 dense random", fraction >= 0.9, t0, 120,
            f"fraction within {bound:.1f} = {fraction:.3f}, max states {max(sizes)}")


def test_09_tree_width(verdict):
    t0 = time.perf_counter()
    n = 8
    bad, discrepancies = [], set()
    for k in (1, 2, 3):
        stated, binom = tree_width_bound(n, k), binomial_tree_width_bound(n, k)
        if stated < binom:
            discrepancies.add((k, stated, binom))
        for seed in range(100):
            a = gen_finite_tw(n, k, seed)
            tw = tree_width_analysis(a)
            states = determinize(a).num_states
            if (tw.finite != oracle_finite_tree_width(a) or not tw.finite or tw.value > k
                    or states > stated or states > binom):
                bad.append((k, seed, tw, states))
    verdict("9 tree width", not bad, t0, 60,
            f"300 automata, violations={bad}, stated<binomial for {sorted(discrepancies) or 'none'}")


def test_10_preservation(verdict):
    t0 = time.perf_counter()
    bad = [i for i, a in enumerate(CORPUS) if not oracle_language_eq(a, determinize(a).det, 6)]
    weighted, seed, complete_closures = 0, 0, 0
    while weighted < 50:
        w = gen_tropical(2 + seed % 4, 1 + seed % 2, seed, acyclic=seed % 2 == 0)
        seed += 1
        result = determinize_weighted(w, 1000)
        if not result.terminated:
            continue
        weighted += 1
        if not oracle_language_eq(w, result.det, 6):
            bad.append(("weights", seed - 1))
        closure = weighted_monoid_closure(weighted_transition_matrices(w), fuel=2000)
        if closure.complete:
            complete_closures += 1
            if result.num_states > closure.size + 1:
                bad.append(("monoid", seed - 1))
    verdict("10 language/weight preservation", not bad, t0, 180,
            f"{len(CORPUS)} unweighted + 50 tropical ({complete_closures} with complete closure), failures={bad}")


def test_11_divergence(verdict):
    t0 = time.perf_counter()
    w = tropical_two_branch(divergent=True)
    result = determinize_weighted(w, 1000)
    closure = weighted_monoid_closure(weighted_transition_matrices(w), fuel=1000)
    ok = not result.terminated and not closure.complete
    verdict("11 weighted divergence", ok, t0, 10,
            f"terminated={result.terminated} closure complete={closure.complete}")
