from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from adlab.errors import NonCoprimeError
from adlab.generators import (
    GeneratorSet,
    contains,
    enumerate_up_to,
    generator_residues,
    parse_generator_args,
    power_form,
    residue_closure,
)
from adlab.numtheory import is_smooth


def test_enumerate_smooth(smooth23):
    assert enumerate_up_to(smooth23, 20) == [1, 2, 3, 4, 6, 8, 9, 12, 16, 18]


def test_enumerate_powers(powers23):
    assert enumerate_up_to(powers23, 30) == [1, 2, 3, 4, 8, 9, 16, 27]


@given(st.integers(1, 5000))
def test_enumeration_agrees_with_membership(bound):
    g = GeneratorSet.smooth([2, 3, 5])
    listed = enumerate_up_to(g, bound)
    assert listed == sorted(set(listed))
    assert listed == [n for n in range(1, bound + 1) if is_smooth(n, [2, 3, 5])]


def test_contains_symmetric(smooth23):
    assert contains(smooth23, 96) and not contains(smooth23, -96)
    assert contains(smooth23, -96, symmetric=True)
    assert not contains(smooth23, 0, symmetric=True)


def test_power_form(powers23, smooth23):
    assert power_form(powers23, 27) == (3, 3)
    assert power_form(powers23, 1) is not None
    assert power_form(powers23, 6) is None


def test_validation():
    with pytest.raises(ValueError):
        GeneratorSet.smooth([2, 4])
    with pytest.raises(ValueError):
        GeneratorSet.power_union([1, 2])
    with pytest.raises(ValueError):
        GeneratorSet("OTHER", (2,))


def test_json_roundtrip(smooth23, powers23):
    for g in (smooth23, powers23):
        assert GeneratorSet.from_json(g.to_json()) == g


def test_residues_and_closure(smooth2, smooth23):
    assert sorted(residue_closure(smooth2, 73)) == [1, 2, 4, 8, 16, 32, 37, 55, 64]
    with pytest.raises(NonCoprimeError):
        generator_residues(smooth23, 6)


def test_parse_generator_args():
    assert parse_generator_args(None, None) == GeneratorSet.smooth([2, 3])
    assert parse_generator_args(None, "2,3").kind == "POWER_UNION"
    with pytest.raises(ValueError):
        parse_generator_args("2", "3")
