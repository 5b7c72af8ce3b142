from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from adlab.engine import (
    DIOPHANTINE_CAPS,
    Representation,
    SearchCaps,
    Term,
    ball,
    is_representable,
    length_upper,
    searcher,
    sphere,
    term_universe,
)
from adlab.errors import CapsError, SearchBudgetError, WindowExceedsCapsError
from adlab.generators import GeneratorSet

SMALL = SearchCaps.make({2: 20, 3: 13})


def test_term_universe_examples(smooth23, smooth2):
    assert term_universe(smooth23, SearchCaps(magnitude_cap=5)) == [-4, -3, -2, -1, 1, 2, 3, 4]
    assert term_universe(GeneratorSet.power_union([2]), SearchCaps({2: 2})) == [-4, -2, -1, 1, 2, 4]
    assert term_universe(smooth2, SearchCaps(magnitude_cap=1)) == [-1, 1]


def test_unbounded_caps_rejected(smooth23):
    with pytest.raises(CapsError):
        term_universe(smooth23, SearchCaps())


def test_is_representable_examples(smooth23, powers23):
    rep = is_representable(5, 2, smooth23, SMALL)
    assert rep is not None and sum(rep.values) == 5 and rep.length == 2
    assert is_representable(0, 0, smooth23, SMALL).terms == ()
    # 150 = 96 + 54 in the smooth set, but not in the power union
    assert is_representable(150, 2, smooth23, DIOPHANTINE_CAPS) is not None
    assert is_representable(150, 2, powers23, DIOPHANTINE_CAPS) is None


def test_length_upper_examples(smooth23):
    assert length_upper(1, 4, smooth23, SMALL)[0] == 1
    assert length_upper(0, 4, smooth23, SMALL) == (0, Representation(0, ()))
    h, rep = length_upper(4, 4, smooth23, SMALL)
    assert h == 1 and rep.values == (4,)


def test_target_beyond_caps(smooth23):
    with pytest.raises(CapsError):
        length_upper(10**30, 2, smooth23, SMALL)


def test_budget_guard(smooth23):
    with pytest.raises(SearchBudgetError):
        searcher(smooth23, DIOPHANTINE_CAPS).representable(103, 3)


def test_representation_invariants(smooth23):
    with pytest.raises(ValueError):
        Representation(5, (Term(1, 2), Term(1, 2)))
    with pytest.raises(ValueError):
        Representation(4, (Term(1, 4), Term(1, 2), Term(-1, 2)))
    rep = Representation.from_values(smooth23, 5, [3, 2])
    assert rep.values == (3, 2)
    assert str(rep) == "5 = 3 + 2"


def test_caps_json_roundtrip():
    for caps in (SMALL, DIOPHANTINE_CAPS, SearchCaps(magnitude_cap=7)):
        assert SearchCaps.from_json(caps.to_json()) == caps


def test_ball_examples(smooth23):
    b = ball(1, 10, smooth23, SearchCaps())
    got = dict(b.entries())
    assert got == {0: 0, **{s * a: 1 for a in (1, 2, 3, 4, 6, 8, 9) for s in (1, -1)}}
    assert dict(ball(0, 5, smooth23, SearchCaps()).entries()) == {0: 0}
    assert ball(2, 5, smooth23, SearchCaps()).length(5) == 2
    assert sphere(1, 10, smooth23, SearchCaps()) == [-9, -8, -6, -4, -3, -2, -1, 1, 2, 3, 4, 6, 8, 9]
    assert sphere(0, 100, smooth23, SearchCaps()) == [0]


def test_window_exceeding_caps(smooth23):
    with pytest.raises(WindowExceedsCapsError):
        ball(2, 100, smooth23, SearchCaps(magnitude_cap=50))


def test_ball_witnesses_are_valid(smooth23):
    b = ball(3, 200, smooth23, SearchCaps())
    for n, d in b.entries():
        w = b.witness(n)
        assert w.length == d and sum(w.values) == n


@settings(max_examples=200, deadline=None)
@given(st.integers(-300, 300))
def test_ball_agrees_with_search(n):
    g = GeneratorSet.smooth([2, 3])
    b = _ball23()
    d = b.length(n)
    found = length_upper(n, 2, g, SMALL)
    # the ball truncates partial sums, so it can only overestimate
    if d is not None and d <= 2:
        assert found is not None and found[0] == d
    elif found is not None:
        assert d is None or found[0] < d


_CACHE = {}


def _ball23():
    if "b" not in _CACHE:
        _CACHE["b"] = ball(2, 300, GeneratorSet.smooth([2, 3]), SearchCaps())
    return _CACHE["b"]
