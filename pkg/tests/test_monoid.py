import pytest
from hypothesis import given, strategies as st

from dirconv.errors import NotInMonoid, ParseError
from dirconv.monoid import (
    AffineEmbedded,
    FinitelyGenerated,
    FullNStar,
    PrimeGenerated,
    contains,
    divisor_pairs,
    elements_up_to,
    embed_affine,
    parse_monoid,
)
from oracles import generated_set

SPECS = [FullNStar(), PrimeGenerated(1), PrimeGenerated(3), FinitelyGenerated((4, 6)), FinitelyGenerated((4, 6, 9))]


def test_contains_examples():
    assert contains(PrimeGenerated(2), 12)
    assert not contains(PrimeGenerated(2), 5)
    assert contains(FinitelyGenerated((4, 6)), 24)
    assert not contains(FinitelyGenerated((4, 6)), 2)
    assert not contains(FinitelyGenerated((4, 6)), 12)


def test_divisor_pairs_examples():
    assert divisor_pairs(FullNStar(), 6) == [(1, 6), (2, 3), (3, 2), (6, 1)]
    for spec in SPECS:
        assert divisor_pairs(spec, 1) == [(1, 1)]
    assert divisor_pairs(PrimeGenerated(1), 8) == [(1, 8), (2, 4), (4, 2), (8, 1)]
    # in gen(4,6) only monoid factors count: 24 = 4*6 but not 2*12
    assert divisor_pairs(FinitelyGenerated((4, 6)), 24) == [(1, 24), (4, 6), (6, 4), (24, 1)]
    with pytest.raises(NotInMonoid):
        divisor_pairs(PrimeGenerated(1), 3)


def test_embed_affine():
    assert embed_affine([(1, 0), (0, 1)], (2, 3), (1, 2)) == 18
    assert embed_affine([(1, 0), (0, 1)], (2, 3), (0, 0)) == 1
    assert embed_affine([(1, 0), (0, 1)], (2, 3), (2, 1)) == 12


def test_elements_up_to_examples():
    assert elements_up_to(PrimeGenerated(2), 10) == [1, 2, 3, 4, 6, 8, 9]
    assert elements_up_to(FullNStar(), 4) == [1, 2, 3, 4]
    assert elements_up_to(FinitelyGenerated((4,)), 20) == [1, 4, 16]


@pytest.mark.parametrize("spec", SPECS, ids=str)
def test_elements_match_closure_oracle(spec):
    bound = 500
    if isinstance(spec, FullNStar):
        expected = set(range(1, bound + 1))
    elif isinstance(spec, PrimeGenerated):
        expected = generated_set(spec.primes, bound)
    else:
        expected = generated_set(spec.gens, bound)
    assert elements_up_to(spec, bound) == sorted(expected)
    assert all(contains(spec, n) == (n in expected) for n in range(1, bound + 1))


def test_affine_monoid():
    spec = parse_monoid("affine[(1,0),(1,2)]@primes(2,3)")
    assert isinstance(spec, AffineEmbedded)
    # generators 2 and 2*9 = 18
    assert elements_up_to(spec, 40) == sorted(generated_set((2, 18), 40))
    assert str(parse_monoid(str(spec))) == str(spec)


@pytest.mark.parametrize("text", ["nstar", "gamma(3)", "gen(4,6,9)", "affine[(1,0),(1,2)]@primes(2,3)"])
def test_parse_round_trip(text):
    assert str(parse_monoid(text)) == text


@pytest.mark.parametrize("bad", ["gamma(0)", "gen(1)", "foo", "affine[(1)]@primes(2,3)", "affine[(1,0)]@primes(2,4)"])
def test_parse_rejects(bad):
    with pytest.raises(ParseError):
        parse_monoid(bad)


def test_submonoid_relation():
    assert PrimeGenerated(2).is_submonoid_of(PrimeGenerated(3))
    assert PrimeGenerated(3).is_submonoid_of(FullNStar())
    assert FinitelyGenerated((4, 6)).is_submonoid_of(PrimeGenerated(2))
    assert not PrimeGenerated(3).is_submonoid_of(PrimeGenerated(2))
    assert not FinitelyGenerated((4, 6)).is_submonoid_of(FinitelyGenerated((4,)))
    assert FinitelyGenerated((16,)).is_submonoid_of(FinitelyGenerated((4, 6)))


@given(st.sampled_from(SPECS), st.integers(1, 2000))
def test_divisor_pairs_are_complete(spec, n):
    if not spec.contains(n):
        return
    pairs = divisor_pairs(spec, n)
    brute = [(a, n // a) for a in range(1, n + 1) if n % a == 0 and spec.contains(a) and spec.contains(n // a)]
    assert pairs == brute
