import pytest

from detlab.gen import (
    gen_commutative,
    gen_dense,
    gen_finite_tw,
    gen_indecomposable,
    gen_moore,
    gen_one_letter_irreducible,
    gen_random,
)


def build_corpus():
    corpus = [gen_moore(n) for n in range(2, 7)]
    corpus += [gen_one_letter_irreducible(n, seed) for n in (3, 5, 8) for seed in range(3)]
    corpus += [gen_commutative(n, 2, seed) for n in (3, 4, 5) for seed in range(2)]
    corpus += [gen_indecomposable(n, 2, r, seed) for n, r in ((6, 1), (7, 2), (8, 2)) for seed in range(2)]
    corpus += [gen_dense(8, 2, 2, seed) for seed in range(3)]
    corpus += [gen_finite_tw(8, k, seed) for k in (1, 2, 3) for seed in range(2)]
    corpus += [gen_random(n, sigma, seed) for n in (2, 4, 6) for sigma in (1, 2, 3) for seed in range(2)]
    return corpus


CORPUS = build_corpus()


@pytest.fixture(scope="session")
def corpus():
    return CORPUS
