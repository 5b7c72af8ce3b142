from __future__ import annotations

import random

from adlab.generators import GeneratorSet
from adlab.twoterm import ExpDiffRefutation, TwoTermProof, prove_length_at_least_three, refute_exp_diff


def test_refutes_149_and_151():
    for c in (149, 151):
        assert isinstance(refute_exp_diff(2, 3, c), ExpDiffRefutation)
        assert isinstance(refute_exp_diff(3, 2, c), ExpDiffRefutation)


def test_finds_solutions():
    x, y = refute_exp_diff(2, 3, 5)
    assert 2**x - 3**y == 5
    x, y = refute_exp_diff(3, 2, 73)
    assert 3**x - 2**y == 73


def test_random_equations_never_refuted_when_solvable():
    rng = random.Random(7)
    for _ in range(150):
        u, v = rng.choice([(2, 3), (3, 2), (2, 5), (5, 3)])
        x, y = rng.randrange(0, 12), rng.randrange(0, 8)
        c = u**x - v**y
        if c == 0:
            continue
        assert not isinstance(refute_exp_diff(u, v, c), ExpDiffRefutation)


def test_proofs_for_small_three_term_numbers(smooth23, powers23):
    for n in (103, 121, 133, 149):
        proof = prove_length_at_least_three(smooth23, n)
        assert proof is not None and proof.n == n
        assert TwoTermProof.from_json(proof.to_json()) == proof
    assert prove_length_at_least_three(smooth23, 5) is None
    assert prove_length_at_least_three(smooth23, 150) is None
    assert prove_length_at_least_three(powers23, 21) is not None
