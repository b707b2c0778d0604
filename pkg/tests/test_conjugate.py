"""Partner-system computation: raw transform, reduction, cross-checks."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import coefficients
from artifact.conjugate import (
    DiffSystem,
    OriginSingularity,
    ZeroField,
    conjugate,
    reduction_quotients,
    pushforward_residual,
    raw_conjugate,
    rebuild_from_quotients,
    transition_jacobian,
    wn_divisibility,
)
from artifact.corpus import case_by_name, load_cases
from artifact.parse import parse_polynomial, parse_system
from artifact.poly import BiPoly, NotDivisible, circle_valuation

XY = ("x", "y")
UV = ("u", "v")


def poly(text, vars=UV):
    return parse_polynomial(text, vars)


def system(px, qy):
    return parse_system(XY, (px, qy))


class TestWnDivisibility:
    def test_radial_field_quotient_zero(self):
        ok, quot = wn_divisibility(system("x", "y"))
        assert ok and quot.is_zero()

    def test_saddle_not_divisible(self):
        ok, rem = wn_divisibility(system("x", "-y"))
        assert not ok
        assert rem == poly("-2*x*y", XY)

    def test_rotation_quotient(self):
        ok, quot = wn_divisibility(system("y", "-x"))
        assert ok and quot == BiPoly.const(-1, XY)


class TestRawConjugate:
    def test_radial_field(self):
        u0, v0 = raw_conjugate(system("x", "y"))
        assert u0 == poly("-u^3 - u*v^2")
        assert v0 == poly("-u^2*v - v^3")

    def test_saddle(self):
        u0, v0 = raw_conjugate(system("x", "-y"))
        assert u0 == poly("-u^3 + 3*u*v^2")
        assert v0 == poly("-3*u^2*v + v^3")

    def test_constant_field(self):
        u0, v0 = raw_conjugate(system("1", "2"))
        assert u0 == poly("-1/4*u^2 - u*v + 1/4*v^2")
        assert v0 == poly("1/2*u^2 - 1/2*u*v - 1/2*v^2")


class TestConjugate:
    def test_radial_field_reduces_fully(self):
        res = conjugate(system("x", "y"))
        assert res.conjugate.rhs == (poly("-u"), poly("-v"))
        assert (res.k, res.m) == (1, 0)

    def test_saddle_keeps_time_factor(self):
        res = conjugate(system("x", "-y"))
        assert res.conjugate.rhs == (poly("-u^3 + 3*u*v^2"),
                                     poly("-3*u^2*v + v^3"))
        assert (res.k, res.m) == (0, 1)
        assert res.time_relation() == "(u^2+v^2)^1 dtau = dt"

    def test_quadratic_image_of_constants_comes_back(self):
        first = conjugate(system("1", "2"))
        back = conjugate(first.conjugate, out_vars=XY)
        assert back.conjugate.rhs == (BiPoly.const(1, XY), BiPoly.const(2, XY))
        assert (back.k, back.m) == (2, 0)

    def test_output_variables_default_to_partner_pair(self):
        res = conjugate(system("x", "-y"))
        assert res.conjugate.vars == UV
        again = conjugate(res.conjugate)
        assert again.conjugate.vars == XY

    def test_json_dict_shape(self):
        data = conjugate(system("x", "-y")).to_json_dict()
        assert data == {
            "n": 1, "k": 0, "m": 1,
            "U": "-u^3 + 3*u*v^2", "V": "-3*u^2*v + v^3",
            "coprime": True,
            "time_relation": "(u^2+v^2)^1 dtau = dt",
        }


class TestCorpusCases:
    def test_every_case_reproduced_exactly(self):
        for case in load_cases():
            res = conjugate(case.system, out_vars=case.conjugate_vars)
            assert case.system.degree == case.expected_n, case.name
            assert (res.k, res.m) == (case.expected_k, case.expected_m), case.name
            assert res.conjugate.rhs == (case.expected_u, case.expected_v), case.name

    def test_transcribed_variants_fail_the_identities(self):
        # the four recorded published variants must not satisfy the
        # pushforward identity that the expected pairs satisfy
        for case in load_cases():
            if case.transcribed is None:
                continue
            res = conjugate(case.system, out_vars=case.conjugate_vars)
            assert case.transcribed != res.conjugate.rhs, case.name
            assert case.note, case.name

    def test_reduced_pair_never_jointly_circle_divisible(self):
        for case in load_cases():
            res = conjugate(case.system, out_vars=case.conjugate_vars)
            u, v = res.conjugate.rhs
            assert min(circle_valuation(u), circle_valuation(v)) == 0, case.name

    def test_wn_divisibility_agrees_with_k(self):
        for case in load_cases():
            ok, _ = wn_divisibility(case.system)
            assert ok == (case.expected_k >= 1), case.name

    def test_degree_bound_on_k(self):
        for case in load_cases():
            assert 2 * case.expected_k <= case.expected_n + 2, case.name


class TestKrDecomposition:
    def test_radial_field(self):
        ks, qs = reduction_quotients(system("x", "y"), 1)
        assert ks == [poly("-x", XY)]
        assert qs == [poly("-y", XY)]

    def test_rotation(self):
        ks, qs = reduction_quotients(system("y", "-x"), 1)
        assert ks == [poly("y", XY)]
        assert qs == [poly("-x", XY)]

    def test_saddle_fails_at_level_one(self):
        with pytest.raises(NotDivisible) as info:
            reduction_quotients(system("x", "-y"), 1)
        assert info.value.r == 1

    def test_k_out_of_range(self):
        with pytest.raises(ValueError):
            reduction_quotients(system("x", "y"), 2)


class TestRebuild:
    def test_radial_field(self):
        assert rebuild_from_quotients(system("x", "y"), 1) == (poly("-u"), poly("-v"))

    def test_rotation(self):
        assert rebuild_from_quotients(system("y", "-x"), 1) == (poly("v"), poly("-u"))

    def test_shifted_radial_field(self):
        u, v = rebuild_from_quotients(system("x - 1", "y - 1"), 1)
        assert u == poly("-u + 1/4*u^2 + 1/2*u*v - 1/4*v^2")
        assert v == poly("-v - 1/4*u^2 + 1/2*u*v + 1/4*v^2")

    def test_agrees_with_direct_path_on_corpus(self):
        for case in load_cases():
            if case.expected_k < 1:
                continue
            res = conjugate(case.system, out_vars=case.conjugate_vars)
            rebuilt = rebuild_from_quotients(case.system, res.k,
                                      out_vars=case.conjugate_vars)
            assert rebuilt == res.conjugate.rhs, case.name


class TestPushforward:
    def test_rotation_at_unit_point(self):
        sys = system("y", "-x")
        res = conjugate(sys)
        assert pushforward_residual(sys, res, (1, 0)) == (0, 0)

    def test_radial_field_at_diagonal_point(self):
        sys = system("x", "y")
        res = conjugate(sys)
        assert pushforward_residual(sys, res, (1, 1)) == (0, 0)

    def test_origin_rejected(self):
        sys = system("x", "y")
        res = conjugate(sys)
        with pytest.raises(OriginSingularity):
            pushforward_residual(sys, res, (0, 0))

    def test_jacobian_at_unit_point(self):
        assert transition_jacobian(Fraction(1), Fraction(0)) == (
            (Fraction(-4), Fraction(0)), (Fraction(0), Fraction(4)))

    def test_zero_residual_across_corpus(self):
        rng = random.Random(20260816)
        for case in load_cases():
            res = conjugate(case.system, out_vars=case.conjugate_vars)
            for _ in range(3):
                p = (Fraction(rng.randint(-9, 9), rng.randint(1, 7)),
                     Fraction(rng.randint(-9, 9), rng.randint(1, 7)))
                if p == (0, 0):
                    continue
                assert pushforward_residual(case.system, res, p) == (0, 0), case.name


def _double_conjugate_matches(sys):
    first = conjugate(sys)
    back = conjugate(first.conjugate, out_vars=sys.vars)
    scale = Fraction(16) ** first.m
    assert back.conjugate.rhs[0] == scale * sys.rhs[0]
    assert back.conjugate.rhs[1] == scale * sys.rhs[1]
    assert back.m == first.m
    n_star = first.conjugate.degree
    assert first.k + back.k == sys.degree + n_star - 2 * first.m


class TestInvolution:
    """Conjugating twice returns the original field times 16^m.

    The transition map is an exact point involution, and the polynomial
    form multiplies the pushed-forward field by (u^2+v^2)^n before
    stripping circle powers; composing both directions leaves exactly the
    time-scale factor 16^m, so the identity is literal precisely when
    m = 0.
    """

    def test_corpus_round_trips(self):
        for case in load_cases():
            _double_conjugate_matches(case.system)

    def test_identity_when_m_is_zero(self):
        for rhs in (("x", "y"), ("y", "-x"), ("x - 1", "y - 1")):
            sys = system(*rhs)
            first = conjugate(sys)
            assert first.m == 0
            back = conjugate(first.conjugate, out_vars=XY)
            assert back.conjugate.rhs == sys.rhs

    @given(st.tuples(coefficients(), coefficients(), coefficients(),
                     coefficients(), coefficients(), coefficients()))
    @settings(max_examples=30, deadline=None)
    def test_random_linear_systems_round_trip(self, cs):
        a, b, c, d, e, f = cs
        p = BiPoly(XY, {(0, 0): a, (1, 0): b, (0, 1): c})
        q = BiPoly(XY, {(0, 0): d, (1, 0): e, (0, 1): f})
        if p.is_zero() and q.is_zero():
            return
        _double_conjugate_matches(DiffSystem.build(XY, p, q))


class TestGuards:
    def test_zero_field_rejected_at_build(self):
        with pytest.raises(ZeroField):
            DiffSystem.build(XY, BiPoly.zero(XY), BiPoly.zero(XY))
