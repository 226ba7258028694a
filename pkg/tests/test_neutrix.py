import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from soritica.neutrix import (
    BoundExceeded,
    Classification,
    ExternalNumber,
    Kind,
    Neutrix,
    SetRelation,
    binomial_check,
    canonicalize,
    classify,
    distributivity_holds,
    infinitely_close,
    is_infinitesimal,
    is_limited,
    n_max,
    n_mul,
    n_scale,
    parse_external,
    regular_inverse,
    relate,
)
from soritica.sampling import (
    en_member,
    en_samples,
    mutual_membership_check,
    neutrix_samples,
    strict_subset_witness,
)
from soritica.series import EPS, OMEGA, ONE, ZERO, EpsSeries, parse_series

F = Fraction
OSLASH = Neutrix.osl(0)
POUND = Neutrix.lim(0)


def en(text):
    return parse_external(text)


exponents = st.fractions(min_value=-3, max_value=3, max_denominator=2)
coefficients = st.fractions(min_value=-9, max_value=9, max_denominator=3)
series_values = st.lists(
    st.tuples(exponents, coefficients), max_size=3
).map(EpsSeries.from_terms)
neutrices = st.one_of(
    st.just(Neutrix.zero()),
    st.builds(Neutrix, exponents, st.sampled_from((Kind.LIM, Kind.OSL))),
)
externals = st.builds(ExternalNumber.make, series_values, neutrices)


class TestNeutrixLattice:
    def test_max_infinitesimals_vs_limited(self):
        assert n_max(OSLASH, POUND) == POUND

    def test_zero_is_least(self):
        assert n_max(Neutrix.zero(), OSLASH) == OSLASH

    def test_scaled_lim_inside_osl(self):
        # val >= 1 is a subset of val > 0
        got = n_max(Neutrix.lim(1), Neutrix.osl(0))
        assert got == Neutrix.osl(0)
        rng = random.Random(7)
        for sample in neutrix_samples(Neutrix.lim(1), 50, rng):
            assert Neutrix.osl(0).contains(sample)

    def test_inclusion_total(self):
        groups = [
            Neutrix.zero(),
            Neutrix.osl(1),
            Neutrix.lim(1),
            OSLASH,
            POUND,
            Neutrix.lim(-1),
        ]
        for a in groups:
            for b in groups:
                assert a.includes(b) or b.includes(a)


class TestScale:
    def test_appreciable_scale_identity(self):
        assert n_scale(EpsSeries.from_rational(3), OSLASH) == OSLASH

    def test_omega_scale_strict_superset(self):
        scaled = n_scale(OMEGA, OSLASH)
        assert scaled == Neutrix.osl(-1)
        assert scaled.strictly_includes(OSLASH)
        witness = strict_subset_witness(OSLASH, scaled)
        assert witness is not None
        assert scaled.contains(witness) and not OSLASH.contains(witness)

    def test_zero_annihilates(self):
        assert n_scale(ZERO, POUND) == Neutrix.zero()


class TestMul:
    def test_osl_osl(self):
        assert n_mul(OSLASH, OSLASH) == OSLASH
        # element-times-group convention: eps * osl sits strictly inside
        assert n_scale(EPS, OSLASH).strictly_includes(Neutrix.zero())
        assert OSLASH.strictly_includes(n_scale(EPS, OSLASH))

    def test_lim_lim(self):
        assert n_mul(POUND, POUND) == POUND
        rng = random.Random(11)
        for a in neutrix_samples(POUND, 20, rng):
            for b in neutrix_samples(POUND, 2, rng):
                assert POUND.contains(a * b)

    def test_exponent_addition(self):
        assert n_mul(Neutrix.lim(1), Neutrix.lim(1)) == Neutrix.lim(2)


class TestAddition:
    def test_dominant_neutrix_wins(self):
        got = en("3 + osl") + en("2 + L(1)")
        assert got == en("5 + osl")
        rng = random.Random(3)
        assert mutual_membership_check(got, en("5 + osl"), rng)

    def test_oslash_idempotent(self):
        assert en("osl") + en("osl") == en("osl")

    def test_eps_absorbed(self):
        assert en("e") + en("osl") == en("osl")

    def test_negation_keeps_neutrix(self):
        assert -en("3 + osl") == en("-3 + osl")
        assert en("3 + osl") + (-en("3 + osl")) == en("osl")
        assert -en("osl") == en("osl")


class TestMultiplication:
    def test_appreciable_product(self):
        got = en("(2 + osl) * (3 + osl)")
        assert got == en("6 + osl")
        rng = random.Random(5)
        assert mutual_membership_check(got, en("6 + osl"), rng)

    def test_unlimited_times_infinitesimal(self):
        got = en("(e^(-1) + lim) * (e + osl)")
        assert got == ExternalNumber.make(ZERO, Neutrix.osl(-1))
        assert got.rep.is_zero  # the representative 1 is absorbed

    def test_identity(self):
        alpha = en("2 + e + L(2)")
        assert alpha * en("1") == alpha


class TestCanonicalize:
    def test_absorbs_high_terms(self):
        got = canonicalize(parse_series("1 + e + e^2"), Neutrix.lim(1))
        assert got.rep == ONE
        assert got == canonicalize(got.rep, got.neutrix)  # idempotent

    def test_zero_neutrix_keeps_everything(self):
        x = parse_series("1 + e + e^2")
        assert canonicalize(x, Neutrix.zero()).rep == x

    def test_boundary_not_absorbed(self):
        got = canonicalize(EpsSeries.from_rational(5), OSLASH)
        assert got.rep == EpsSeries.from_rational(5)


class TestClassify:
    def test_appreciable(self):
        assert classify(en("2 + e + osl")) is Classification.APPRECIABLE

    def test_unlimited(self):
        assert classify(en("e^(-1) + lim")) is Classification.UNLIMITED

    def test_neutrix_only(self):
        alpha = en("osl")
        assert classify(alpha) is Classification.NEUTRIX_ONLY
        assert alpha.neutrix.kind is Kind.OSL
        assert is_infinitesimal(alpha)
        assert is_limited(alpha)

    def test_pound_mixes_classes(self):
        alpha = en("lim")
        assert classify(alpha) is Classification.NEUTRIX_ONLY
        assert not is_infinitesimal(alpha)
        assert is_limited(alpha)

    def test_classification_matches_members(self):
        rng = random.Random(13)
        alpha = en("2 + osl")
        for member in en_samples(alpha, 50, rng):
            assert member.valuation == 0  # every member appreciable


class TestRelate:
    def test_disjoint_less(self):
        assert relate(en("3 + osl"), en("4 + osl")) is SetRelation.DISJOINT_LESS

    def test_absorption_gives_equal(self):
        assert relate(en("e + osl"), en("osl")) is SetRelation.EQUAL

    def test_proper_subset(self):
        assert relate(en("osl"), en("lim")) is SetRelation.PROPER_SUB
        assert relate(en("lim"), en("osl")) is SetRelation.PROPER_SUP

    @given(externals, externals)
    def test_exactly_one_relation(self, a, b):
        rel = relate(a, b)
        flipped = relate(b, a)
        mirror = {
            SetRelation.EQUAL: SetRelation.EQUAL,
            SetRelation.PROPER_SUB: SetRelation.PROPER_SUP,
            SetRelation.PROPER_SUP: SetRelation.PROPER_SUB,
            SetRelation.DISJOINT_LESS: SetRelation.DISJOINT_GREATER,
            SetRelation.DISJOINT_GREATER: SetRelation.DISJOINT_LESS,
        }
        assert flipped is mirror[rel]


class TestInfinitelyClose:
    def test_eps_close(self):
        assert infinitely_close(parse_series("1 + e"), ONE)

    def test_appreciable_gap(self):
        assert not infinitely_close(ONE, EpsSeries.from_rational(2))

    def test_high_order_difference(self):
        assert infinitely_close(OMEGA, parse_series("e^(-1) + e^2"))


class TestDistributivity:
    def test_known_failure(self):
        ok, left, right = distributivity_holds(en("1 + osl"), en("1"), en("-1"))
        assert not ok
        assert left == en("0")
        assert right == en("osl")

    def test_field_case(self):
        ok, _, _ = distributivity_holds(en("2"), en("3 + e"), en("-1"))
        assert ok

    def test_eps_times_pound(self):
        ok, left, right = distributivity_holds(en("e"), en("lim"), en("lim"))
        assert ok
        assert left == ExternalNumber.make(ZERO, Neutrix.lim(1))

    @given(externals, externals, externals)
    @settings(max_examples=60)
    def test_subdistributive_inclusion(self, a, b, c):
        left = a * (b + c)
        right = a * b + a * c
        rng = random.Random(17)
        assert all(en_member(x, right) for x in en_samples(left, 10, rng))


class TestBinomial:
    def test_square(self):
        ok, left, right = binomial_check(en("1 + osl"), en("1 + osl"), 2)
        assert ok
        assert left == en("4 + osl")

    def test_annihilation(self):
        ok, _, _ = binomial_check(en("2 + e + L(1)"), en("0"), 5)
        assert ok

    def test_field_cross_check(self):
        ok, left, _ = binomial_check(en("e"), en("1"), 3)
        assert ok
        assert left == en("1 + 3*e + 3*e^2 + e^3")

    def test_bound(self):
        with pytest.raises(BoundExceeded):
            binomial_check(en("1"), en("1"), 9)


class TestRegularity:
    @given(externals)
    def test_additive_regularity(self, alpha):
        assert alpha + (-alpha) + alpha == alpha

    def test_multiplicative_witness(self):
        for text in ("2 + osl", "e^(-1) + lim", "1 + e + L(3)", "5"):
            alpha = en(text)
            beta = regular_inverse(alpha)
            assert beta is not None
            assert alpha * beta * alpha == alpha

    def test_no_witness_is_reported_not_fabricated(self):
        # 1 + e has no finite-series inverse and a zero neutrix
        assert regular_inverse(en("1 + e")) is None

    @given(externals, externals)
    def test_no_zero_divisors(self, a, b):
        if (a * b).is_zero:
            assert a.is_zero or b.is_zero


class TestNeutrixScaleProperties:
    @given(neutrices, st.integers(min_value=1, max_value=10**6))
    def test_integer_scale_identity(self, neutrix, n):
        scaled = n_scale(EpsSeries.from_rational(n), neutrix)
        assert scaled == neutrix or neutrix.is_zero

    @given(neutrices)
    def test_omega_scale_strict(self, neutrix):
        scaled = n_scale(OMEGA, neutrix)
        assert scaled.includes(neutrix)
        if not neutrix.is_zero:
            assert scaled != neutrix


class TestParsePrint:
    @pytest.mark.parametrize(
        "text, expected",
        [
            ("(2 + osl) * (3 + osl)", "6 + o(0)"),
            ("osl + osl", "o(0)"),
            ("3 * L(0)", "L(0)"),
            ("e + osl", "o(0)"),
            ("2 + L(1/2)", "2 + L(1/2)"),
            ("£", "L(0)"),
        ],
    )
    def test_str(self, text, expected):
        assert str(parse_external(text)) == expected

    @given(externals)
    def test_round_trip(self, alpha):
        assert parse_external(str(alpha)) == alpha
