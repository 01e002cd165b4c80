import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gsbc.config import (
    BiPeriodic,
    EventuallyPeriodic,
    GeneratorBacked,
    Pattern,
    overlay,
    parse_config,
    parse_pattern,
    patterns_translation_equivalent,
    random_config,
    restrict,
    shift,
)
from gsbc.errors import DomainError, NotDecidable, ParseError
from gsbc.monoid import Monoid

symbols = st.lists(st.integers(0, 4), max_size=6)
periods = st.lists(st.integers(0, 4), min_size=1, max_size=4)


def naive_ep(prefix, period):
    return lambda i: prefix[i] if i < len(prefix) else period[(i - len(prefix)) % len(period)]


def naive_bi(L, C, s, R):
    def f(i):
        if i < s:
            return L[(i - s) % len(L)]
        if i < s + len(C):
            return C[i - s]
        return R[(i - s - len(C)) % len(R)]
    return f


eps = st.builds(lambda p, q: EventuallyPeriodic(tuple(p), tuple(q)), symbols, periods)
bis = st.builds(
    lambda L, C, s, R: BiPeriodic(tuple(L), tuple(C), s, tuple(R)),
    periods, symbols, st.integers(-6, 6), periods,
)


def test_get_examples(x_sample):
    assert x_sample.get(2) == 5
    assert x_sample.get(9) == 0
    assert parse_config("L=7 C@-1=1,2 R=9").get(-5) == 7


def test_bi_layout():
    y = parse_config("L=7,8 C@-1=1,2 R=9")
    assert [y.get(i) for i in range(-5, 4)] == [7, 8, 7, 8, 1, 2, 9, 9, 9]


def test_restrict_examples(x_sample):
    assert restrict(x_sample, [0, 2]) == Pattern.of({0: 2, 2: 5})
    assert restrict(x_sample, []) == Pattern()
    assert restrict(x_sample, [100]) == Pattern.of({100: 0})


def test_shift_examples(x_sample):
    assert shift(0, x_sample) == x_sample
    assert shift(2, x_sample) == EventuallyPeriodic((5, 1, 3), (0,))
    assert shift(2, x_sample).to_literal() == "5,1,3;0"
    with pytest.raises(DomainError):
        shift(-1, x_sample)


def test_shift_closed_form_not_generator():
    assert isinstance(shift(7, parse_config("1;2,3")), EventuallyPeriodic)
    assert isinstance(shift(-7, parse_config("L=1 C@0=4 R=2,3")), BiPeriodic)


@given(symbols, periods, st.integers(0, 30), st.integers(0, 30))
def test_ep_get_and_shift_match_naive(prefix, period, g, i):
    x = EventuallyPeriodic(tuple(prefix), tuple(period))
    f = naive_ep(prefix, period)
    assert x.get(i) == f(i)
    assert shift(g, x).get(i) == f(g + i)


@given(periods, symbols, st.integers(-6, 6), periods, st.integers(-20, 20), st.integers(-20, 20))
def test_bi_get_and_shift_match_naive(L, C, s, R, g, i):
    x = BiPeriodic(tuple(L), tuple(C), s, tuple(R))
    f = naive_bi(L, C, s, R)
    assert x.get(i) == f(i)
    assert shift(g, x).get(i) == f(g + i)


@given(eps, st.integers(0, 20), st.integers(0, 20), st.integers(0, 20))
def test_shift_composition_n(x, g, h, i):
    assert shift(g, shift(h, x)).get(i) == shift(g + h, x).get(i)
    assert shift(g, shift(h, x)) == shift(g + h, x)


@given(bis, st.integers(-20, 20), st.integers(-20, 20), st.integers(-20, 20))
def test_shift_composition_z(x, g, h, i):
    assert shift(g, shift(h, x)) == shift(g + h, x)


@given(eps, st.integers(0, 10), st.lists(st.integers(0, 15), max_size=5))
def test_restrict_translate_compatibility(x, g, N):
    lhs = restrict(shift(g, x), N)
    rhs = restrict(x, [g + i for i in N]).translate(-g)
    assert lhs == rhs


@given(symbols, periods, st.integers(1, 3), st.integers(0, 3))
def test_canonical_equality_ep(prefix, period, reps, unroll):
    x = EventuallyPeriodic(tuple(prefix), tuple(period))
    # same sequence: repeated period, part of the period unrolled into the prefix
    unrolled = list(prefix) + [period[k % len(period)] for k in range(unroll)]
    rot = [period[(unroll + k) % len(period)] for k in range(len(period))]
    y = EventuallyPeriodic(tuple(unrolled), tuple(rot * reps))
    assert x == y
    assert hash(x) == hash(y)


def test_canonical_form_is_minimal():
    x = EventuallyPeriodic((1, 2, 0, 0), (0, 0))
    assert (x.prefix, x.period) == ((1, 2), (0,))
    y = EventuallyPeriodic((3, 1, 2), (1, 2))
    assert (y.prefix, y.period) == ((3,), (1, 2))


@settings(max_examples=200)
@given(bis, st.integers(-6, 6))
def test_canonical_equality_bi(x, k):
    L, C, s, R = x.left_period, x.core, x.core_start, x.right_period
    # widen the core by one left period and one right period: same sequence
    wider = BiPeriodic(L, L + C + R, s - len(L), R)
    assert wider == x
    f = naive_bi(list(L), list(C), s, list(R))
    assert [wider.get(i) for i in range(-15, 15)] == [f(i) for i in range(-15, 15)]


def test_bi_globally_periodic_normal_form():
    a = BiPeriodic((0, 1), (), 3, (0, 1))
    b = BiPeriodic((1, 0), (1, 0, 1, 0), -6, (1, 0))
    assert a == b
    assert (a.left_period, a.core, a.core_start) == ((1, 0), (), 0)


def test_equal_descriptions_differ_when_sequences_differ():
    assert parse_config("1;0") != parse_config("0;1")
    assert parse_config("L=0 C@0=1 R=0") != parse_config("L=0 C@1=1 R=0")


def test_translation_equivalence():
    p = Pattern.of({0: 4, 1: 4})
    assert patterns_translation_equivalent(p, Pattern.of({3: 4, 4: 4})) == 3
    assert patterns_translation_equivalent(Pattern.of({0: 4}), Pattern.of({0: 5})) is None
    assert patterns_translation_equivalent(Pattern(), Pattern()) == 0


@given(st.dictionaries(st.integers(-5, 5), st.integers(0, 3), max_size=4), st.integers(-5, 5))
def test_translation_equivalence_matches_brute_force(d, g):
    p = Pattern.of(d)
    q = p.translate(g)
    found = patterns_translation_equivalent(p, q)
    # brute force over candidate offsets
    candidates = [h for h in range(-20, 21) if p.translate(h) == q]
    if d:
        assert found == g and candidates == [g]
    else:
        assert found == 0


def test_generator_backed():
    x = GeneratorBacked(lambda i: i % 3, "mod3")
    assert x.get(7) == 1
    assert shift(2, x).get(0) == 2
    assert x == GeneratorBacked(lambda i: 0, "mod3")
    with pytest.raises(NotDecidable):
        x.support()
    with pytest.raises(DomainError):
        x.get(-1)


@pytest.mark.parametrize("text", ["2,0,5,1,3;0", ";0", "1;2,3", "L=7 C@-1=1,2 R=9", "L=7 C@0= R=9,8"])
def test_literal_roundtrip(text):
    x = parse_config(text)
    assert parse_config(x.to_literal()) == x


@pytest.mark.parametrize("text", ["1,2", "1;", "L= C@0=1 R=2", "a;b", "L=1 C@x=1 R=2"])
def test_literal_errors(text):
    with pytest.raises(ParseError):
        parse_config(text)


def test_pattern_literal():
    assert parse_pattern("0@0,0@1") == Pattern.of({0: 0, 1: 0})
    assert parse_pattern("5@-2") == Pattern.of({-2: 5})
    assert parse_pattern("") == Pattern()
    with pytest.raises(ParseError):
        parse_pattern("0-1")


def test_pattern_invariants():
    with pytest.raises(DomainError):
        Pattern(((0, 1), (0, 2)))
    with pytest.raises(DomainError):
        Pattern(((0, -1),))
    assert Pattern.of({0: 1}).merge(Pattern.of({0: 2})) is None
    assert Pattern.of({0: 1}).merge(Pattern.of({1: 2})) == Pattern.of({0: 1, 1: 2})


@pytest.mark.parametrize("monoid", [Monoid.N, Monoid.Z])
def test_overlay(monoid):
    lo = 0 if monoid is Monoid.N else -3
    p = Pattern.of({lo: 4, 2: 5})
    x = overlay(p, [1, 2], monoid)
    for i in range(lo, 12):
        assert x.get(i) == (p[i] if i in p else [1, 2][i % 2])


@pytest.mark.parametrize("monoid", [Monoid.N, Monoid.Z])
def test_random_config_reproducible(monoid):
    a = [random_config(random.Random(5), monoid) for _ in range(3)]
    b = [random_config(random.Random(5), monoid) for _ in range(3)]
    assert a == b
