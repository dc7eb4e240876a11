import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dirconv.arith import ArithFunction
from dirconv.errors import ParseError, SemanticError
from dirconv.grothendieck import ExtFunction
from dirconv.monoid import FinitelyGenerated, FullNStar, PrimeGenerated
from dirconv.powerseries import LaurentSeries, TruncatedSeries
from dirconv.rings import ComplexField, IntegerRing, ModularRing, PolynomialRing, RationalField
from dirconv import textio

import randfn

RINGS = [RationalField(), IntegerRing(), ModularRing(7), ComplexField(), PolynomialRing(2), PolynomialRing(1, RationalField())]
SPECS = [FullNStar(), PrimeGenerated(2), FinitelyGenerated((4, 6))]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(RINGS), st.sampled_from(SPECS), st.integers(0, 10 ** 9))
def test_function_round_trip(ring, spec, seed):
    a = randfn.function(random.Random(seed), spec, ring, 100)
    text = textio.write_function(a)
    b = textio.read_function(text)
    assert b.equals(a)
    assert textio.write_function(b) == text


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(RINGS), st.integers(0, 10 ** 9))
def test_module_round_trip(ring, seed):
    f = randfn.module_function(random.Random(seed), FullNStar(), ring, 3, 60)
    text = textio.write_module_function(f)
    assert textio.write_module_function(textio.read_module_function(text)) == text


def test_ext_round_trip():
    core = ArithFunction(FullNStar(), RationalField(), 50, {1: Fraction(1, 2), 3: 4})
    a = ExtFunction(2, core)
    text = textio.write_ext_function(a)
    assert text.splitlines()[0] == "monoid=nstar ring=Q bound=50 denominator=2"
    b = textio.read_ext_function(text)
    assert b.equals(a) and textio.write_ext_function(b) == text


def test_series_round_trip():
    s = TruncatedSeries(RationalField(), (4, 3, 2), {(0, 0, 0): 1, (1, 2, 0): Fraction(-3, 4)}, 500)
    text = textio.write_series(s)
    assert textio.write_series(textio.read_series(text)) == text
    ls = LaurentSeries((-1, 0, 0), s)
    text = textio.write_series(ls)
    back = textio.read_series(text)
    assert isinstance(back, LaurentSeries) and back.equals(ls) and textio.write_series(back) == text


def test_header_defaults_and_comments():
    a = textio.read_function("# mu up to 4\n1 1\n2 -1\n3 -1\n", {"bound": 4})
    assert a.spec == FullNStar() and a.ring == RationalField() and a.bound == 4
    assert a[4] == 0


@pytest.mark.parametrize("text", [
    "",
    "monoid=nstar ring=Q bound=10\n1\n",
    "monoid=nstar ring=Q bound=x\n1 1\n",
    "monoid=nstar ring=Q bound=10\n1 1/0x\n",
    "monoid=nstar ring=Q bound=10\n1 1\n1 2\n",
    "monoid=nowhere ring=Q bound=10\n1 1\n",
    "monoid=nstar ring=Q bound=10 junk\n1 1\n",
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        textio.read_function(text)


def test_character_files():
    a = textio.read_function("monoid=nstar ring=Q bound=20\n2 -1\n3 1/2\n6 -1/2\n")
    L = textio.character_from_function(a)
    assert L(12) == Fraction(1, 2) and L(8) == -1
    bad = textio.read_function("monoid=nstar ring=Q bound=20\n2 2\n4 3\n")
    with pytest.raises(SemanticError):
        textio.character_from_function(bad)
    d = textio.additive_character_from_function(textio.read_function("monoid=nstar ring=Q bound=20\n2 1\n3 5\n"))
    assert d(12) == (7,)
    with pytest.raises(SemanticError):
        textio.additive_character_from_function(textio.read_function("monoid=nstar ring=Q bound=20\n2 1\n4 3\n"))
