import math

import numpy as np
import pytest

from saranfk import (
    DirichletMeasure,
    DiscreteFkParams,
    DomainError,
    FkParams,
    HypergeometricMeasure,
    Phi3Spec,
    PoleError,
    QContext,
    QDirichletMeasure,
    QfkShiftParams,
    QHypergeometricMeasure,
    dirichlet_density,
    discrete_weight,
    discrete_weight_limit,
    gasper_discrete_3phi2,
    hypergeometric_density,
    jackson_integral,
    phi3,
    phi_k_q,
    q_measure_density,
    q_measure_rule,
    q_moment,
    qshift_operator_kernel,
    rphis,
    saran_fk_triple,
)
from saranfk.core import q_pochhammer, q_pochhammer_inf, q_pochhammer_inf_ratio


def brute_rphis(up, lo, z, ctx, n_terms):
    total = 0.0
    spow = 1 + len(lo) - len(up)
    for n in range(n_terms):
        num = 1.0
        for u in up:
            num *= q_pochhammer(u, n, ctx)
        den = q_pochhammer(ctx.q, n, ctx)
        for b in lo:
            den *= q_pochhammer(b, n, ctx)
        sign = ((-1.0) ** n * ctx.q ** (n * (n - 1) // 2)) ** spow
        total += num / den * sign * z**n
    return total


class TestRphis:
    def test_argument_zero(self, ctx05):
        assert rphis([0.3, 0.4], [0.6], 0.0, ctx05).value == pytest.approx(1.0)

    def test_terminating_term_count(self, ctx05):
        r = rphis([ctx05.q**-2, 0.3], [0.6], 0.7, ctx05)
        assert r.terms_used == 3

    def test_2phi1_brute(self, ctx05):
        got = rphis([0.4, 0.7], [0.3], 0.35, ctx05).value
        assert got == pytest.approx(brute_rphis([0.4, 0.7], [0.3], 0.35, ctx05, 150), rel=1e-12)

    def test_3phi2_with_zeros_brute(self, ctx05):
        up = [0.5**0.5, 0.0, 0.0]
        lo = [0.3 * 0.5**0.7, 0.2 * 0.5**0.9]
        got = rphis(up, lo, 0.4, ctx05).value
        assert got == pytest.approx(brute_rphis(up, lo, 0.4, ctx05, 200), rel=1e-12)

    def test_terminating_is_polynomial(self, ctx05):
        # Degree-N polynomial: the (N+1)-st finite difference of samples at
        # equally spaced points vanishes.
        N = 2
        up = [ctx05.q ** float(-N), 0.35]
        lo = [0.6]
        zs = np.linspace(0.1, 0.9, N + 2)
        vals = np.array([complex(rphis(up, lo, z, ctx05).value).real for z in zs])
        assert abs(np.diff(vals, n=N + 1)).max() < 1e-10

    def test_lower_pole(self, ctx05):
        with pytest.raises(PoleError):
            rphis([0.4], [ctx05.q**-1], 0.2, ctx05)

    def test_domain(self, ctx05):
        with pytest.raises(DomainError):
            rphis([0.4, 0.5], [0.6], 1.2, ctx05)


class TestPhi3:
    def test_origin(self, ctx05):
        spec = Phi3Spec(c=(0.4,), h=(0.3,))
        assert phi3(spec, 0.0, 0.0, 0.0, ctx05).value == pytest.approx(1.0)

    def test_single_index_collapse(self, ctx05):
        # One numerator over one denominator with y = z = 0 is the 2phi1-type
        # series with a padded zero upper base (no sign factor either way).
        spec = Phi3Spec(c=(0.45,), h=(0.25,))
        got = phi3(spec, 0.3, 0.0, 0.0, ctx05).value
        want = rphis([0.45, 0.0], [0.25], 0.3, ctx05).value
        assert got == pytest.approx(want, rel=1e-12)

    def test_brute_force_triple(self, ctx05):
        # Joint-coupled spec checked cell by cell against a plain loop.
        q = ctx05.q
        spec = Phi3Spec(
            bp=(q**1.1,), bpp=(q**0.8,),
            c=(q**0.7, q**1.2), cp=(q**0.9, q**1.4), cpp=(q**1.0,),
            h=(q**0.6, q**1.1), hp=(q**0.7, q**1.0), hpp=(q**0.5, q**0.8),
        )
        x, y, z = 0.2, 0.15, 0.1
        total = 0.0
        for m in range(20):
            for n in range(20):
                for p in range(20):
                    num = (
                        q_pochhammer(q**1.1, n + p, ctx05)
                        * q_pochhammer(q**0.8, p + m, ctx05)
                        * q_pochhammer(q**0.7, m, ctx05) * q_pochhammer(q**1.2, m, ctx05)
                        * q_pochhammer(q**0.9, n, ctx05) * q_pochhammer(q**1.4, n, ctx05)
                        * q_pochhammer(q**1.0, p, ctx05)
                    )
                    den = (
                        q_pochhammer(q**0.6, m, ctx05) * q_pochhammer(q**1.1, m, ctx05)
                        * q_pochhammer(q**0.7, n, ctx05) * q_pochhammer(q**1.0, n, ctx05)
                        * q_pochhammer(q**0.5, p, ctx05) * q_pochhammer(q**0.8, p, ctx05)
                        * q_pochhammer(q, m, ctx05) * q_pochhammer(q, n, ctx05)
                        * q_pochhammer(q, p, ctx05)
                    )
                    total += num / den * x**m * y**n * z**p
        got = phi3(spec, x, y, z, ctx05).value
        assert got == pytest.approx(total, rel=2e-10)

    def test_denominator_pole_rejected(self, ctx05):
        spec = Phi3Spec(c=(0.4,), h=(ctx05.q**-3,))
        with pytest.raises(PoleError):
            phi3(spec, 0.1, 0.1, 0.1, ctx05)


class TestPhiKq:
    def test_origin(self, ctx05):
        p = FkParams(0.5, 0.7, 0.9, 0.6, 1.5, 1.3, 1.1)
        assert phi_k_q(p, 0, 0, 0, ctx05).value == pytest.approx(1.0)

    def test_z_zero_product(self, ctx05):
        q = ctx05.q
        p = FkParams(0.5, 0.7, 0.9, 0.6, 1.5, 1.3, 1.1)
        got = phi_k_q(p, 0.3, 0.25, 0.0, ctx05).value
        want = (
            complex(rphis([q**0.9, q**0.5], [q**1.5], 0.3, ctx05).value)
            * complex(rphis([q**0.7, q**0.6], [q**1.3], 0.25, ctx05).value)
        )
        assert complex(got) == pytest.approx(want, rel=1e-12)

    def test_cross_form_internal(self, ctx05):
        # phi_k_q raises if the triple series and reexpansion ever split.
        p = FkParams(0.5, 0.7, 0.9, 0.6, 1.5, 1.3, 1.1)
        r = phi_k_q(p, 0.3, 0.25, 0.2, ctx05)
        assert r.converged

    def test_classical_limit(self):
        ctx = QContext(q=0.999)
        p = FkParams(0.5, 0.7, 0.9, 0.6, 1.5, 1.3, 1.1)
        got = phi_k_q(p, 0.1, 0.12, 0.08, ctx, tol=1e-10).value
        want = saran_fk_triple(p, 0.1, 0.12, 0.08).value
        assert complex(got) == pytest.approx(complex(want), rel=1e-2)

    def test_domain(self, ctx05):
        p = FkParams(0.5, 0.7, 0.9, 0.6, 1.5, 1.3, 1.1)
        with pytest.raises(DomainError):
            phi_k_q(p, 1.1, 0.2, 0.1, ctx05)


class TestJacksonIntegral:
    def test_constant(self, ctx05):
        assert jackson_integral(lambda t: np.ones_like(t), 1, ctx05) == pytest.approx(1.0, abs=1e-10)

    def test_linear(self, ctx05):
        got = jackson_integral(lambda t: t, 1, ctx05)
        assert got == pytest.approx(1.0 / (1.0 + ctx05.q), rel=1e-12)

    def test_q_beta_representation(self, ctx05):
        from saranfk.core import q_beta

        x0, y0 = 1.3, 0.8
        got = jackson_integral(
            lambda t: t ** (x0 - 1) * q_pochhammer_inf_ratio(t * ctx05.q, t * ctx05.q**y0, ctx05),
            1,
            ctx05,
        )
        assert got == pytest.approx(q_beta(x0, y0, ctx05), rel=1e-12)

    def test_two_dimensional_product(self, ctx05):
        got = jackson_integral(lambda u, v: u * np.ones_like(v), 2, ctx05)
        assert got == pytest.approx(1.0 / (1.0 + ctx05.q), rel=1e-10)

    def test_pointwise_fallback(self, ctx05):
        got = jackson_integral(lambda t: t**2, 1, ctx05, vectorized=False)
        assert got == pytest.approx((1 - ctx05.q) / (1 - ctx05.q**3), rel=1e-12)

    def test_dimension_cap(self, ctx05):
        with pytest.raises(DomainError):
            jackson_integral(lambda *a: 1.0, 4, ctx05)


class TestQMeasures:
    def test_qdirichlet_normalization(self, ctx05):
        t, w = q_measure_rule(QDirichletMeasure(0.8, 1.3, ctx05))
        assert complex(w.sum()) == pytest.approx(1.0, abs=1e-10)

    def test_qhypergeometric_normalization(self, ctx05):
        nu, lam, g, eta = 0.6, 1.1, 2.0, 1.7
        spec = QHypergeometricMeasure(eta - lam, g - lam, g - lam + eta - nu, nu, ctx05)
        t, w = q_measure_rule(spec)
        assert complex(w.sum()) == pytest.approx(1.0, abs=1e-10)

    def test_density_requires_lattice_point(self, ctx05):
        with pytest.raises(DomainError):
            q_measure_density(QDirichletMeasure(0.8, 1.3, ctx05), 0.4)

    def test_invalid_parameters(self, ctx05):
        with pytest.raises(DomainError):
            QDirichletMeasure(-0.5, 1.0, ctx05)
        with pytest.raises(DomainError):
            QHypergeometricMeasure(0.5, 0.5, 0.4, -0.2, ctx05)

    def test_classical_limit_of_densities(self):
        # On-lattice t near 1/2 at q close to 1.
        ctx = QContext(q=0.999)
        n = round(math.log(0.5) / math.log(ctx.q))
        t = ctx.q**n
        qd = q_measure_density(QDirichletMeasure(0.8, 1.3, ctx), t)
        cd = dirichlet_density(DirichletMeasure(0.8, 1.3), t)
        assert qd == pytest.approx(cd, rel=1e-2)
        nu, lam, g, eta = 0.6, 1.1, 2.0, 1.7
        qh = q_measure_density(
            QHypergeometricMeasure(eta - lam, g - lam, g - lam + eta - nu, nu, ctx), t
        )
        ch = hypergeometric_density(
            HypergeometricMeasure(eta - lam, g - lam, g - lam + eta - nu, nu), t
        )
        assert qh == pytest.approx(ch, rel=1e-2)


class TestQMoment:
    def test_normalization(self, ctx05):
        spec = QDirichletMeasure(0.8, 1.3, ctx05)
        assert q_moment(spec, 0) == pytest.approx(1.0)

    def test_first_moment_closed_form(self):
        q = 0.5
        ctx = QContext(q=q)
        nu, lam, g, eta = 0.5, 0.6, 1.5, 1.4
        spec = QHypergeometricMeasure(eta - lam, g - lam, g - lam + eta - nu, nu, ctx)
        want = (1 - q**nu) * (1 - q**lam) / ((1 - q**g) * (1 - q**eta))
        assert q_moment(spec, 1) == pytest.approx(want, rel=1e-13)

    @pytest.mark.parametrize("q", [0.3, 0.5, 0.7])
    def test_closed_form_matches_lattice(self, q, rng):
        ctx = QContext(q=q)
        for _ in range(6):
            nu, lam = rng.uniform(0.4, 1.2, 2)
            g = lam + rng.uniform(0.3, 1.0)
            eta = nu + (lam - g) + rng.uniform(0.4, 1.2)
            if min(nu, lam, g - lam + eta - nu) <= 0:
                continue
            spec = QHypergeometricMeasure(eta - lam, g - lam, g - lam + eta - nu, nu, ctx)
            t, w = q_measure_rule(spec)
            for ell in range(9):
                got = complex((w * t**ell).sum())
                assert abs(got - q_moment(spec, ell)) < 1e-10


class TestShiftKernel:
    SP = QfkShiftParams(
        alpha1=0.8, alpha2=1.1, beta1=0.9, beta2=0.7, gamma3=1.5,
        eta1=0.9, eta2=0.6, mu2=1.0, lam1=0.5, lam2=0.8, lam3=0.4,
    )

    def test_z_zero_collapse(self, ctx05):
        q = ctx05.q
        sp = self.SP
        u, v, w = q**1, q**2, q**1
        x, y = 0.27, 0.21
        got = qshift_operator_kernel(sp, u, v, w, x, y, 0.0, ctx05)
        a0 = (
            q_pochhammer_inf(u * x * q**sp.lam3, ctx05) / q_pochhammer_inf(u * x, ctx05)
            * complex(rphis([q**sp.lam3, q**(sp.lam1 - sp.eta1), 1 / u],
                            [q**sp.lam1, q / (u * x)], q, ctx05).value)
        )
        b0 = (
            q_pochhammer_inf(v * y * q**sp.eta2, ctx05) / q_pochhammer_inf(v * y, ctx05)
            * complex(rphis([q**sp.eta2, q**(sp.lam2 - sp.mu2), 1 / v],
                            [q**sp.lam2, q / (v * y)], q, ctx05).value)
        )
        inner = FkParams(
            alpha1=sp.alpha1, alpha2=sp.alpha2 - sp.eta2,
            beta1=sp.beta1 - sp.lam3, beta2=sp.beta2,
            gamma1=sp.alpha1 - sp.lam1 + sp.eta1,
            gamma2=sp.beta2 - sp.lam2 + sp.mu2,
            gamma3=sp.beta1 - sp.lam3,
        )
        pk0 = complex(phi_k_q(inner, u * x * q**sp.lam3, v * y * q**sp.eta2, 0.0, ctx05).value)
        assert got == pytest.approx(a0 * b0 * pk0, rel=1e-12)

    def test_eta2_zero_single_term(self, ctx05):
        # (1;q)_k vanishes for k >= 1, so only the k = 0 term survives even
        # with z nonzero.
        q = ctx05.q
        sp0 = QfkShiftParams(
            alpha1=0.8, alpha2=1.1, beta1=0.9, beta2=0.7, gamma3=1.5,
            eta1=0.9, eta2=0.0, mu2=1.0, lam1=0.5, lam2=0.8, lam3=0.4,
        )
        kz = qshift_operator_kernel(sp0, q, q**2, q, 0.27, 0.21, 0.3, ctx05)
        k0 = qshift_operator_kernel(sp0, q, q**2, q, 0.27, 0.21, 0.3, ctx05, kmax=0)
        assert kz == pytest.approx(k0, rel=1e-13)

    def test_k_truncation_refinement(self, ctx05):
        q = ctx05.q
        v25 = qshift_operator_kernel(self.SP, q, q**2, q, 0.27, 0.21, 0.3, ctx05, kmax=25)
        v60 = qshift_operator_kernel(self.SP, q, q**2, q, 0.27, 0.21, 0.3, ctx05, kmax=60)
        assert v25 == pytest.approx(v60, rel=1e-12)

    def test_off_lattice_rejected(self, ctx05):
        with pytest.raises(DomainError):
            qshift_operator_kernel(self.SP, 0.4, 0.5, 0.25, 0.2, 0.2, 0.1, ctx05)


class TestDiscreteWeights:
    P = DiscreteFkParams(
        alpha1=0.7, beta2=0.9, gamma1=1.6, gamma2=1.9, gamma3=1.4,
        lam1=0.6, lam2=1.1, mu1=1.2, mu2=0.8, mu3=0.9,
    )

    def test_w3_boundary_closed_form(self, ctx05):
        # At i = t the middle factor collapses and w3 is a plain q-binomial
        # style ratio.
        from saranfk.core import q_pochhammer_table

        q = ctx05.q
        t = 5
        got = discrete_weight("w3", t, t, self.P, ctx05)
        want = (
            q_pochhammer_table(q, t, q)[t]
            / q_pochhammer_table(q**self.P.gamma3, t, q)[t]
            * q_pochhammer_table(q**self.P.mu3, t, q)[t]
            / q_pochhammer_table(q, t, q)[t]
        )
        assert got == pytest.approx(want, rel=1e-13)

    def test_index_bounds(self, ctx05):
        with pytest.raises(DomainError):
            discrete_weight("w1", 4, 3, self.P, ctx05)

    @pytest.mark.parametrize("which", ["w1", "w2", "w3"])
    @pytest.mark.parametrize("i", [0, 2])
    def test_limits_at_r40(self, which, i, ctx05):
        fin = discrete_weight(which, 40 - i, 40, self.P, ctx05)
        lim = discrete_weight_limit(which, i, self.P, ctx05)
        assert abs(fin - lim) < 1e-6 * abs(lim)


class TestGasperDiscrete:
    ARGS = dict(alpha=0.3, beta=0.7, gamma_=0.25, delta=0.4, lam=0.6, mu=0.8, nu=0.65)

    def test_n_zero(self, ctx05):
        rhs = gasper_discrete_3phi2(**self.ARGS, n=0, ctx=ctx05)
        assert rhs == pytest.approx(1.0, rel=1e-14)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_exact_identity(self, n, ctx05):
        q = ctx05.q
        lhs = complex(rphis([self.ARGS["alpha"], self.ARGS["beta"], q ** float(-n)],
                            [self.ARGS["gamma_"], self.ARGS["delta"]], q, ctx05).value)
        rhs = gasper_discrete_3phi2(**self.ARGS, n=n, ctx=ctx05)
        assert abs(lhs - rhs) < 1e-13 * (1 + abs(lhs))

    def test_mu_equals_lam_collapse(self, ctx05):
        # With mu = lam the inner 3phi2 has upper base 1 and collapses to its
        # leading term; the identity must still be exact.
        q = ctx05.q
        args = dict(self.ARGS)
        args["mu"] = args["lam"]
        n = 2
        lhs = complex(rphis([args["alpha"], args["beta"], q ** float(-n)],
                            [args["gamma_"], args["delta"]], q, ctx05).value)
        rhs = gasper_discrete_3phi2(**args, n=n, ctx=ctx05)
        assert abs(lhs - rhs) < 1e-13 * (1 + abs(lhs))
