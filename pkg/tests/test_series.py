import math

import pytest

from saranfk import (
    CoeffSequence2D,
    DomainError,
    FkParams,
    PoleError,
    appell_f2,
    convolve2d,
    delta_sequence,
    fk_L,
    fk_diagonal_sequence,
    gauss_2f1,
    generic_f_a,
    geometric_sequence,
    hyper_pfq,
    in_domain_fk,
    saran_fk_reexpand,
    saran_fk_triple,
)
from saranfk.core import pochhammer


def brute_2f1(a, b, c, z, n_terms):
    total, term = 0.0, 1.0
    for n in range(n_terms):
        total += term
        term *= (a + n) * (b + n) / ((c + n) * (1.0 + n)) * z
    return total


def brute_pfq(up, lo, z, n_terms):
    total, term = 0.0, 1.0
    for n in range(n_terms):
        total += term
        num = 1.0
        for u in up:
            num *= u + n
        den = 1.0 + n
        for b in lo:
            den *= b + n
        term *= num / den * z
    return total


def brute_f2(a, b1, b2, c1, c2, y, z, box):
    total = 0.0
    rm = 1.0
    for m in range(box):
        term = rm
        for n in range(box):
            total += term
            term *= (a + m + n) * (b2 + n) / ((c2 + n) * (1.0 + n)) * z
        rm *= (a + m) * (b1 + m) / ((c1 + m) * (1.0 + m)) * y
    return total


def brute_fk(p: FkParams, x, y, z, box):
    total = 0.0
    for m in range(box):
        for n in range(box):
            for k in range(box):
                co = (
                    pochhammer(p.alpha1, m)
                    * pochhammer(p.alpha2, n + k)
                    * pochhammer(p.beta1, m + k)
                    * pochhammer(p.beta2, n)
                )
                co /= (
                    pochhammer(p.gamma1, m)
                    * pochhammer(p.gamma2, n)
                    * pochhammer(p.gamma3, k)
                    * math.factorial(m)
                    * math.factorial(n)
                    * math.factorial(k)
                )
                total += co * x**m * y**n * z**k
    return total


class TestGauss2F1:
    def test_argument_zero(self):
        assert gauss_2f1(0.3, 0.9, 1.7, 0.0).value == pytest.approx(1.0)

    def test_log_closed_form(self):
        # 2F1(1,1;2;z) = -log(1-z)/z; brute series oracle at 200 terms.
        oracle = brute_2f1(1, 1, 2, 0.5, 200)
        got = gauss_2f1(1, 1, 2, 0.5).value
        assert got == pytest.approx(2 * math.log(2), rel=1e-11)
        assert got == pytest.approx(oracle, rel=1e-11)

    def test_pfaff_self_consistency(self):
        a, b, c, z = 0.7, 1.3, 2.1, 0.45
        lhs = gauss_2f1(a, b, c, z).value
        rhs = (1 - z) ** (-a) * gauss_2f1(a, c - b, c, z / (z - 1)).value
        assert abs(lhs - rhs) < 1e-11 * (1 + abs(lhs))

    def test_near_one_route(self):
        # Compare the z -> 1-z expansion against a long direct sum.
        a, b, c, z = 0.5, 0.6, 2.0, 0.97
        oracle = brute_2f1(a, b, c, z, 2000)
        assert gauss_2f1(a, b, c, z).value == pytest.approx(oracle, rel=1e-10)

    def test_terminating_outside_disc(self):
        got = gauss_2f1(-3, 0.6, 2.0, 5.0).value
        oracle = brute_2f1(-3.0, 0.6, 2.0, 5.0, 4)
        assert got == pytest.approx(oracle, rel=1e-13)

    def test_pole_error(self):
        with pytest.raises(PoleError):
            gauss_2f1(0.5, 0.5, -2, 0.3)

    def test_domain_error(self):
        with pytest.raises(DomainError):
            gauss_2f1(0.5, 0.5, 1.5, 1.6)

    def test_halving_tol_stays_within_estimate(self):
        for z in (0.3, 0.62, 0.88):
            r1 = gauss_2f1(0.8, 1.1, 1.9, z, tol=1e-8)
            r2 = gauss_2f1(0.8, 1.1, 1.9, z, tol=5e-9)
            allowed = r1.est_trunc_error * (1 + abs(complex(r1.value)))
            assert abs(complex(r1.value) - complex(r2.value)) <= allowed


class TestHyperPfq:
    def test_argument_zero(self):
        assert hyper_pfq([0.3, 0.9], [1.7], 0.0).value == pytest.approx(1.0)

    def test_reduces_to_2f1(self):
        got = hyper_pfq([0.4, 1.2], [1.9], 0.37).value
        want = gauss_2f1(0.4, 1.2, 1.9, 0.37).value
        assert got == pytest.approx(want, rel=1e-12)

    def test_3f2_brute(self):
        up, lo, z = [0.4, 0.9, 1.3], [1.7, 0.8], 0.3
        assert hyper_pfq(up, lo, z).value == pytest.approx(brute_pfq(up, lo, z, 300), rel=1e-12)

    def test_pole(self):
        with pytest.raises(PoleError):
            hyper_pfq([0.5], [-1.0], 0.2)

    def test_divergent(self):
        with pytest.raises(DomainError):
            hyper_pfq([0.5, 0.6, 0.7], [0.8], 0.5)


class TestAppellF2:
    def test_origin(self):
        assert appell_f2(1, 1, 1, 2, 2, 0, 0).value == pytest.approx(1.0)

    def test_brute_force(self):
        got = appell_f2(0.5, 0.5, 0.5, 1.5, 1.5, 0.25, 0.25).value
        oracle = brute_f2(0.5, 0.5, 0.5, 1.5, 1.5, 0.25, 0.25, 90)
        assert got == pytest.approx(oracle, rel=1e-12)

    def test_degenerate_reduction(self):
        # F2 with matching b' and c2 collapses to a one-variable function.
        a, b, bp, c = 0.7, 0.4, 1.1, 1.9
        y, z = 0.2, 0.3
        lhs = appell_f2(a, b, bp, c, bp, y, z).value
        rhs = (1 - z) ** (-a) * gauss_2f1(a, b, c, y / (1 - z)).value
        assert abs(lhs - rhs) < 1e-10 * (1 + abs(lhs))

    def test_domain(self):
        with pytest.raises(DomainError):
            appell_f2(0.5, 0.5, 0.5, 1.5, 1.5, 0.6, 0.5)


class TestDomainFk:
    def test_origin(self):
        assert in_domain_fk(0, 0, 0)

    def test_boundary_strict(self):
        assert not in_domain_fk(0.5, 0.5, 0.25)

    def test_interior(self):
        assert in_domain_fk(0.2, 0.1, 0.3)


class TestSaranFk:
    def test_origin(self):
        p = FkParams(0.5, 0.5, 0.5, 0.5, 1.5, 1.5, 1.5)
        assert saran_fk_triple(p, 0, 0, 0).value == pytest.approx(1.0)
        assert saran_fk_reexpand(p, 0, 0, 0).value == pytest.approx(1.0)

    def test_z_zero_product(self):
        p = FkParams(0.5, 0.5, 0.5, 0.5, 1.5, 1.5, 1.5)
        got = saran_fk_triple(p, 0.2, 0.1, 0.0).value
        want = gauss_2f1(0.5, 0.5, 1.5, 0.2).value * gauss_2f1(0.5, 0.5, 1.5, 0.1).value
        assert got == pytest.approx(want, rel=1e-12)

    def test_cross_form(self):
        p = FkParams(0.5, 0.5, 0.5, 0.5, 1.5, 1.5, 1.5)
        t = saran_fk_triple(p, 0.2, 0.1, 0.3).value
        r = saran_fk_reexpand(p, 0.2, 0.1, 0.3).value
        assert abs(complex(t) - complex(r)) < 1e-10 * (1 + abs(complex(t)))

    def test_brute_force(self):
        p = FkParams(0.7, 0.9, 1.1, 0.6, 1.8, 2.0, 1.4)
        got = saran_fk_triple(p, 0.15, 0.12, 0.1).value
        oracle = brute_fk(p, 0.15, 0.12, 0.1, 22)
        assert got == pytest.approx(oracle, rel=1e-11)

    def test_symmetry_swap(self):
        # Exchanging (x, a1, b1, g1) with (y, b2, a2, g2) leaves F_K fixed.
        p = FkParams(0.7, 0.9, 1.1, 0.6, 1.8, 2.0, 1.4)
        swapped = FkParams(0.6, 1.1, 0.9, 0.7, 2.0, 1.8, 1.4)
        a = saran_fk_triple(p, 0.25, 0.15, 0.2).value
        b = saran_fk_triple(swapped, 0.15, 0.25, 0.2).value
        assert a == pytest.approx(b, rel=1e-11)

    def test_x_zero_reduces_to_f2(self):
        p = FkParams(0.7, 0.9, 1.1, 0.6, 1.8, 2.0, 1.4)
        got = saran_fk_reexpand(p, 0.0, 0.3, 0.25).value
        want = appell_f2(0.9, 0.6, 1.1, 2.0, 1.4, 0.3, 0.25).value
        assert got == pytest.approx(want, rel=1e-11)

    def test_domain_error(self):
        p = FkParams(0.5, 0.5, 0.5, 0.5, 1.5, 1.5, 1.5)
        with pytest.raises(DomainError):
            saran_fk_triple(p, 0.5, 0.5, 0.3)

    def test_pole_parameters(self):
        with pytest.raises(PoleError):
            FkParams(0.5, 0.5, 0.5, 0.5, -1.0, 1.5, 1.5)


class TestFkL:
    def test_all_zero(self):
        r = fk_L(0.5, 0.8, [1.0, 1.2], [1.5, 1.1, 1.3], [0, 0, 0])
        assert r.value == pytest.approx(1.0)

    def test_l3_matches_saran(self):
        p = FkParams(0.7, 0.9, 1.1, 0.6, 1.8, 2.0, 1.4)
        x, y, z = 0.2, 0.1, 0.3
        want = saran_fk_triple(p, x, y, z).value
        # Chain order (z1, z2, z3) corresponds to Saran's (x, z, y).
        got = fk_L(0.7, 0.6, [1.1, 0.9], [1.8, 1.4, 2.0], [x, z, y]).value
        assert got == pytest.approx(want, rel=1e-11)

    def test_l4_degenerate_product(self):
        got = fk_L(0.5, 0.8, [1.0, 1.2, 0.9], [1.5, 1.1, 1.3, 1.7], [0.3, 0, 0, 0.4]).value
        want = gauss_2f1(0.5, 1.0, 1.5, 0.3).value * gauss_2f1(0.8, 0.9, 1.7, 0.4).value
        assert got == pytest.approx(want, rel=1e-11)

    def test_l4_brute(self):
        from functools import lru_cache

        pochhammer = lru_cache(maxsize=None)(
            lambda a, n: math.prod(a + j for j in range(n))
        )
        zs = [0.25, 0.2, 0.15, 0.3]
        b = [1.0, 1.2, 0.9]
        c = [1.5, 1.1, 1.3, 1.7]
        total = 0.0
        for n1 in range(18):
            for n2 in range(18):
                for n3 in range(18):
                    for n4 in range(18):
                        co = (
                            pochhammer(0.5, n1) * pochhammer(b[0], n1 + n2)
                            * pochhammer(b[1], n2 + n3) * pochhammer(b[2], n3 + n4)
                            * pochhammer(0.8, n4)
                        )
                        co /= (
                            pochhammer(c[0], n1) * pochhammer(c[1], n2)
                            * pochhammer(c[2], n3) * pochhammer(c[3], n4)
                        )
                        co /= (
                            math.factorial(n1) * math.factorial(n2)
                            * math.factorial(n3) * math.factorial(n4)
                        )
                        total += co * zs[0] ** n1 * zs[1] ** n2 * zs[2] ** n3 * zs[3] ** n4
        got = fk_L(0.5, 0.8, b, c, zs).value
        assert got == pytest.approx(total, rel=1e-7)

    def test_l5_conservative_domain(self):
        r = fk_L(0.5, 0.8, [1.0, 1.2, 0.9, 0.7], [1.5, 1.1, 1.3, 1.7, 1.2], [0.08] * 5)
        assert r.converged
        with pytest.raises(DomainError):
            fk_L(0.5, 0.8, [1.0, 1.2, 0.9, 0.7], [1.5, 1.1, 1.3, 1.7, 1.2], [0.12] * 5)

    def test_unsupported_length(self):
        with pytest.raises(DomainError):
            fk_L(0.5, 0.8, [1.0], [1.5, 1.1], [0.1, 0.1])


class TestConvolutionFamily:
    def test_delta_gives_product(self):
        got = generic_f_a(delta_sequence(), 0.5, 0.7, 1.5, 0.8, 0.9, 1.7, 0.3, 0.2, 0.1, 0.15).value
        want = gauss_2f1(0.5, 0.7, 1.5, 0.3).value * gauss_2f1(0.8, 0.9, 1.7, 0.2).value
        assert got == pytest.approx(want, rel=1e-11)

    def test_diagonal_gives_fk(self):
        a1p, a2p, g3 = 0.5, 0.8, 1.4
        seq = fk_diagonal_sequence(a1p, a2p, g3)
        x1, x2, x3, x4 = 0.3, 0.2, 0.25, 0.3
        got = generic_f_a(seq, a1p, 0.7, 1.5, a2p, 0.9, 1.7, x1, x2, x3, x4).value
        pk = FkParams(alpha1=0.7, alpha2=a2p, beta1=a1p, beta2=0.9,
                      gamma1=1.5, gamma2=1.7, gamma3=g3)
        want = saran_fk_triple(pk, x1, x2, x3 * x4).value
        assert got == pytest.approx(want, rel=1e-11)

    def test_convolution_identity_element(self):
        seq = geometric_sequence(0.3)
        conv = convolve2d(seq, delta_sequence())
        for m, n in [(0, 0), (3, 5), (8, 2)]:
            assert conv(m, n) == pytest.approx(seq(m, n), rel=1e-13)

    def test_convolution_commutes(self):
        a = geometric_sequence(0.3)
        b = geometric_sequence(0.2)
        ab, ba = convolve2d(a, b), convolve2d(b, a)
        for m, n in [(10, 10), (5, 3)]:
            assert ab(m, n) == pytest.approx(ba(m, n), rel=1e-12)

    def test_ones_count(self):
        ones = CoeffSequence2D(lambda m, n: 1.0, 1.0)
        conv = convolve2d(ones, ones)
        assert conv(3, 4) == pytest.approx(20.0)

    def test_convolution_brute(self):
        a = geometric_sequence(0.3)
        b = fk_diagonal_sequence(0.5, 0.8, 1.4)
        conv = convolve2d(a, b)
        for m in range(0, 9, 4):
            for n in range(0, 9, 4):
                brute = sum(
                    complex(a(m - i, n - j)) * complex(b(i, j))
                    for i in range(m + 1)
                    for j in range(n + 1)
                )
                assert complex(conv(m, n)) == pytest.approx(brute, rel=1e-12)

    def test_domain_checks(self):
        with pytest.raises(DomainError):
            generic_f_a(delta_sequence(), 0.5, 0.7, 1.5, 0.8, 0.9, 1.7, 1.1, 0.2, 0.1, 0.1)
        fat = CoeffSequence2D(lambda m, n: 2.0 ** (m + n), 2.0)
        with pytest.raises(DomainError):
            generic_f_a(fat, 0.5, 0.7, 1.5, 0.8, 0.9, 1.7, 0.3, 0.2, 0.6, 0.1)


class TestConvergedImpliesEstimateWithinTol:
    def test_across_engines(self):
        p = FkParams(0.7, 0.9, 1.1, 0.6, 1.8, 2.0, 1.4)
        tol = 1e-10
        results = [
            gauss_2f1(0.8, 1.1, 1.9, 0.62, tol),
            hyper_pfq([0.4, 0.9, 1.3], [1.7, 0.8], 0.3, tol),
            appell_f2(0.5, 0.5, 0.5, 1.5, 1.5, 0.3, 0.35, tol),
            saran_fk_triple(p, 0.25, 0.2, 0.3, tol),
            saran_fk_reexpand(p, 0.25, 0.2, 0.3, tol),
            fk_L(0.5, 0.8, [1.0, 1.2, 0.9], [1.5, 1.1, 1.3, 1.7], [0.25, 0.2, 0.15, 0.3], tol),
            generic_f_a(geometric_sequence(0.3), 0.5, 0.7, 1.5, 0.8, 0.9, 1.7,
                        0.3, 0.2, 0.2, 0.2, tol),
        ]
        for r in results:
            assert r.converged
            assert r.est_trunc_error <= tol


class TestTolHalving:
    def test_fk_engines(self):
        p = FkParams(0.7, 0.9, 1.1, 0.6, 1.8, 2.0, 1.4)
        for fn in (saran_fk_triple, saran_fk_reexpand):
            r1 = fn(p, 0.25, 0.2, 0.3, 1e-8)
            r2 = fn(p, 0.25, 0.2, 0.3, 5e-9)
            allowed = r1.est_trunc_error * (1 + abs(complex(r1.value)))
            assert abs(complex(r1.value) - complex(r2.value)) <= allowed

    def test_f2_engine(self):
        r1 = appell_f2(0.5, 0.5, 0.5, 1.5, 1.5, 0.3, 0.35, tol=1e-8)
        r2 = appell_f2(0.5, 0.5, 0.5, 1.5, 1.5, 0.3, 0.35, tol=5e-9)
        allowed = r1.est_trunc_error * (1 + abs(complex(r1.value)))
        assert abs(complex(r1.value) - complex(r2.value)) <= allowed
