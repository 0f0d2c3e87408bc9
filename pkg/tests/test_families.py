"""Weighted lattice-sum families and their frozen expansions."""

import pytest

from falsetheta.rat import Rat
from falsetheta.series import PuiseuxSeries
from falsetheta.families import (
    sgn_star,
    rho,
    quad_Q,
    G_frak,
    G_frak_rewrite_p2,
    G_frak_closed_p2,
    G_hyper,
    H_frak,
    coeff_F,
    F_constant_term,
    partial_theta_A2,
    F0_series,
    rank_one_coeff,
    rogers_false_theta,
)


def series_dict(s):
    return dict(s.items())


class TestWeights:
    def test_sgn_star_zero_positive(self):
        assert sgn_star(0) == 1 and sgn_star(-1) == -1 and sgn_star(3) == 1

    def test_rho_values(self):
        assert rho(1, 2) == 1 and rho(-1, -5) == -1 and rho(-1, 2) == 0

    def test_quadratic_form(self):
        assert quad_Q(2, 3) == 4 + 9 - 6


class TestGFamily:
    def test_leading_terms_p2(self):
        g = G_frak((0, 0), 2, Rat(8))
        assert series_dict(g) == {
            Rat(1, 2): Rat(1),
            Rat(3, 2): Rat(-2),
            Rat(7, 2): Rat(2),
            Rat(9, 2): Rat(1),
            Rat(13, 2): Rat(-4),
        }

    def test_p3_valuation(self):
        g = G_frak((0, 0), 3, Rat(4))
        assert g.valuation() == Rat(4, 3)
        assert g.coeff(Rat(4, 3)) == 1 and g.coeff(Rat(7, 3)) == -2

    def test_rational_offsets_allowed(self):
        g = G_frak((Rat(1, 3), Rat(2, 3)), 2, Rat(5))
        assert not g.is_zero()

    def test_rewrite_matches_definition(self):
        for lam in ((0, 0), (Rat(1, 3), Rat(2, 3)), (Rat(-1, 2), Rat(-1, 2))):
            assert G_frak(lam, 2, Rat(15)) == G_frak_rewrite_p2(lam, Rat(15))

    def test_closed_form_small(self):
        c = G_frak_closed_p2((0, 0), Rat(6))
        assert c.valuation() == Rat(1, 2)
        assert c.coeff(Rat(1, 2)) == 1

    def test_invalid_p_rejected(self):
        with pytest.raises(ValueError):
            G_frak((0, 0), 1, Rat(5))


class TestCoefficientFamilies:
    def test_coeff_F_equals_G_at_the_index(self):
        for r in ((0, 0), (1, 0), (-1, 2), (2, -2)):
            assert coeff_F(r, 2, Rat(12)) == G_frak(r, 2, Rat(12))

    def test_constant_term_expansion(self):
        f = F_constant_term(2, Rat(8))
        # q^(1/2) (1 - 2q + 2q^3 + q^4 - 4 q^6 + ...)
        assert series_dict(f) == {
            Rat(1, 2): Rat(1),
            Rat(3, 2): Rat(-2),
            Rat(7, 2): Rat(2),
            Rat(9, 2): Rat(1),
            Rat(13, 2): Rat(-4),
        }

    def test_partial_theta_leading(self):
        t = partial_theta_A2((0, 0), 2, Rat(6))
        assert series_dict(t) == {
            Rat(1, 2): Rat(1),
            Rat(7, 2): Rat(2),
            Rat(9, 2): Rat(2),
        }

    def test_half_index_family_leading(self):
        h = H_frak(Rat(1, 2), 0, Rat(5))
        assert series_dict(h) == {
            Rat(2): Rat(1),
            Rat(3): Rat(-1),
            Rat(4): Rat(-1),
        }

    def test_half_index_requires_half_integer(self):
        with pytest.raises(ValueError):
            H_frak(1, 0, Rat(5))
        with pytest.raises(ValueError):
            H_frak(Rat(1, 2), Rat(1, 2), Rat(5))

    def test_hypergeometric_diagonal_symmetry(self):
        # swapping r1 and r2 permutes the three absolute values
        assert G_hyper((1, 0), Rat(6)) == G_hyper((0, 1), Rat(6))

    def test_cubic_weight_forms_agree(self):
        assert F0_series(2, Rat(20), "GENERAL") == F0_series(2, Rat(20), "P2SIMPLIFIED")

    def test_cubic_weight_rejects_bad_form(self):
        with pytest.raises(ValueError):
            F0_series(3, Rat(5), "P2SIMPLIFIED")


class TestRankOne:
    def test_rogers_supported_on_triangular_numbers_to_100(self):
        r = rogers_false_theta(Rat(100))
        expect = {}
        n = 0
        while Rat(n * (n + 1), 2) < 100:
            expect[Rat(n * (n + 1), 2)] = Rat(-1 if n % 2 else 1)
            n += 1
        assert series_dict(r) == expect

    def test_rank_one_p2_r0_is_shifted_rogers_to_50(self):
        lhs = rank_one_coeff(2, 0, Rat(50) + Rat(1, 8))
        rhs = rogers_false_theta(Rat(50)).shift(Rat(1, 8))
        assert lhs == rhs

    def test_rank_one_sign_structure(self):
        s = rank_one_coeff(3, 0, Rat(10))
        signs = [c for _, c in s.items()]
        assert all(c in (Rat(1), Rat(-1)) for c in signs)
