"""q-analogue identity cases: Gasper's q-Erdelyi integrals, the Bateman-type
triple q-integral, the moment-based multi-variable theorem with its
corollaries, the discrete finite-sum analogue with its weight limits, and the
shift-operator q-Erdelyi integral with its simplification.

Right-hand sides are Jackson lattice sums built from q-measure rules
(effective nodes and weights); the series factors inside every integrand are
vectorized over the lattice through the broadcasting term recurrence, with
terminating series cut exactly at their lattice-index bound.
"""

from __future__ import annotations

import math

import numpy as np

from .core import q_pochhammer_inf, q_pochhammer_table
from .errors import DomainError
from .qkernels import (
    DiscreteFkParams,
    Phi3Spec,
    QDirichletMeasure,
    QHypergeometricMeasure,
    _phi_k_pmax,
    _phi_k_reexpand,
    _rphis_array,
    discrete_weight,
    discrete_weight_limit,
    phi3,
    phi_k_p_tables,
    q_measure_rule,
)
from .registry import Constraint, EvalSettings, IdentityCase, ParameterPoint
from .series import FkParams

Q_ARG_CAP = 0.3


def _u(rng, lo, hi):
    return float(rng.uniform(lo, hi))


def _pos(name: str, fn) -> Constraint:
    return Constraint(name, lambda pt, f=fn: complex(f(pt.flat())).real > 0.0)


def _qargs(rng, n=3):
    return [_u(rng, 0.03, Q_ARG_CAP) for _ in range(n)]


def _k_table(base, K: int, q: float) -> np.ndarray:
    """(base;q)_k along a new trailing axis k = 0..K for an array of bases."""
    base = np.asarray(base)
    steps = 1.0 - base[..., None] * q ** np.arange(K, dtype=np.float64)
    out = np.ones(base.shape + (K + 1,), dtype=steps.dtype)
    np.cumprod(steps, axis=-1, out=out[..., 1:])
    return out


def _phi_k_value(p: FkParams, x, y, z, s: EvalSettings) -> complex:
    value, _, _ = _phi_k_reexpand(p, x, y, z, s.qctx, s.series_tol)
    return complex(value)


def _moment_powers(t, w, z, pmax: int) -> np.ndarray:
    """sum_i w_i (z t_i)^p as a vector over p = 0..pmax."""
    return (w[:, None] * np.power(np.multiply.outer(t, np.ones(pmax + 1)) * z,
                                  np.arange(pmax + 1)[None, :])).sum(axis=0)


# ---------------------------------------------------------------------------
# Gasper's q-Erdelyi integrals
# ---------------------------------------------------------------------------


def _sample_gasper1(rng) -> ParameterPoint:
    lam = _u(rng, 0.5, 1.0)
    return ParameterPoint(
        values={
            "alpha": _u(rng, 0.1, 2.2), "beta": _u(rng, 0.1, 2.2),
            "gamma": lam + _u(rng, 0.4, 1.2), "lam": lam, "alphap": _u(rng, 0.1, 1.5),
        },
        arguments={"x": _qargs(rng, 1)[0]},
    )


def _lhs_2phi1(pt, s: EvalSettings):
    v = pt.flat()
    q = s.q
    out, *_ = _rphis_array(
        [q ** v["alpha"], q ** v["beta"]], [q ** v["gamma"]], v["x"], s.qctx, tol=s.series_tol
    )
    return complex(out[()])


def _rhs_gasper1(pt, s: EvalSettings):
    v = pt.flat()
    q = s.q
    ctx = s.qctx
    x = v["x"]
    t, w = q_measure_rule(QDirichletMeasure(v["lam"], v["gamma"] - v["lam"], ctx), s.jackson_scale)
    ii = np.arange(len(t))
    pref = q_pochhammer_inf(x * t * q ** v["alphap"], ctx) / q_pochhammer_inf(x * t, ctx)
    f1, *_ = _rphis_array(
        [q ** (v["alpha"] - v["alphap"]), q ** v["beta"]],
        [q ** v["lam"]],
        x * t * q ** v["alphap"],
        ctx,
        tol=s.series_tol,
    )
    f2, *_ = _rphis_array(
        [q ** v["alphap"], q ** (v["beta"] - v["lam"]), 1.0 / t],
        [q ** (v["gamma"] - v["lam"]), q / (x * t)],
        q,
        ctx,
        terminate_after=ii,
    )
    return complex((w * pref * f1 * f2).sum())


def _sample_gasper3(rng) -> ParameterPoint:
    lam = _u(rng, 0.5, 1.0)
    nu = _u(rng, 0.5, 1.0)
    gamma = lam + _u(rng, 0.4, 1.2)
    eta = nu - (gamma - lam) + _u(rng, 0.4, 1.2)
    return ParameterPoint(
        values={
            "alpha": _u(rng, 0.1, 2.2), "beta": _u(rng, 0.1, 2.2),
            "gamma": gamma, "eta": eta, "lam": lam, "nu": nu,
        },
        arguments={"x": _qargs(rng, 1)[0]},
    )


def _gasper3_measure(v, ctx) -> QHypergeometricMeasure:
    return QHypergeometricMeasure(
        v["eta"] - v["lam"], v["gamma"] - v["lam"],
        v["gamma"] - v["lam"] + v["eta"] - v["nu"], v["nu"], ctx,
    )


def _rhs_gasper3(pt, s: EvalSettings):
    v = pt.flat()
    q = s.q
    ctx = s.qctx
    t, w = q_measure_rule(_gasper3_measure(v, ctx), s.jackson_scale)
    f, *_ = _rphis_array(
        [q ** v["alpha"], q ** v["beta"], q ** v["eta"]],
        [q ** v["lam"], q ** v["nu"]],
        v["x"] * t,
        ctx,
        tol=s.series_tol,
    )
    return complex((w * f).sum())


# ---------------------------------------------------------------------------
# Bateman-type triple q-integral
# ---------------------------------------------------------------------------


def _sample_ernst(rng) -> ParameterPoint:
    nus = [_u(rng, 0.5, 0.9) for _ in range(3)]
    gammas = [nu + _u(rng, 0.4, 1.2) for nu in nus]
    x, y, z = _qargs(rng)
    return ParameterPoint(
        values={
            "alpha1": _u(rng, 0.1, 2.2), "alpha2": _u(rng, 0.1, 2.2),
            "beta1": _u(rng, 0.1, 2.2), "beta2": _u(rng, 0.1, 2.2),
            "gamma1": gammas[0], "gamma2": gammas[1], "gamma3": gammas[2],
            "nu1": nus[0], "nu2": nus[1], "nu3": nus[2],
        },
        arguments={"x": x, "y": y, "z": z},
    )


def _outer_fk(v) -> FkParams:
    return FkParams(
        alpha1=v["alpha1"], alpha2=v["alpha2"], beta1=v["beta1"], beta2=v["beta2"],
        gamma1=v["gamma1"], gamma2=v["gamma2"], gamma3=v["gamma3"],
    )


def _lhs_phi_k(pt, s: EvalSettings):
    v = pt.flat()
    return _phi_k_value(_outer_fk(v), v["x"], v["y"], v["z"], s)


def _phi_k_integral(inner: FkParams, rules, x, y, z, s: EvalSettings) -> complex:
    """Triple lattice integral of Phi_K(x t1, y t2, z t3) against three
    measure rules, contracted through the third-index decomposition."""
    (t1, w1), (t2, w2), (t3, w3) = rules
    pmax = _phi_k_pmax(abs(z), s.series_tol)
    coef, A, B = phi_k_p_tables(inner, x * t1, y * t2, s.qctx, pmax, tol=s.series_tol * 1e-2)
    SA = w1 @ A
    SB = w2 @ B
    SC = _moment_powers(t3, w3, z, pmax)
    return complex((coef * SA * SB * SC).sum())


def _rhs_ernst(pt, s: EvalSettings):
    v = pt.flat()
    ctx = s.qctx
    rules = [
        q_measure_rule(QDirichletMeasure(v[f"nu{j}"], v[f"gamma{j}"] - v[f"nu{j}"], ctx), s.jackson_scale)
        for j in (1, 2, 3)
    ]
    inner = FkParams(
        alpha1=v["alpha1"], alpha2=v["alpha2"], beta1=v["beta1"], beta2=v["beta2"],
        gamma1=v["nu1"], gamma2=v["nu2"], gamma3=v["nu3"],
    )
    return _phi_k_integral(inner, rules, v["x"], v["y"], v["z"], s)


# ---------------------------------------------------------------------------
# Moment-based multi-variable theorem
# ---------------------------------------------------------------------------

JV_VARIANTS = tuple((k, mode) for k in (1, 2, 3) for mode in ("poly", "hyper"))


def _sample_joshi_vyas(rng) -> ParameterPoint:
    variant = int(rng.integers(0, len(JV_VARIANTS)))
    k, _ = JV_VARIANTS[variant]
    vals = {"variant": float(variant)}
    for j in range(1, k + 1):
        lam = _u(rng, 0.5, 1.0)
        nu = _u(rng, 0.5, 1.0)
        gamma = _u(rng, 0.5, 1.5)
        eta = nu - gamma + lam + _u(rng, 0.4, 1.2)
        vals.update({f"lam{j}": lam, f"nu{j}": nu, f"gamma{j}": gamma, f"eta{j}": eta})
        vals[f"seq_a{j}"] = _u(rng, 0.3, 1.5)
        vals[f"seq_r{j}"] = float(rng.choice([-1, 1])) * _u(rng, 0.3, 0.7)
    vals["seq_b"] = _u(rng, 0.3, 1.5)
    args = {f"z{j}": _qargs(rng, 1)[0] for j in range(1, k + 1)}
    return ParameterPoint(values=vals, arguments=args)


def _jv_coeff_tensor(v, k: int, mode: str, sizes, q: float) -> np.ndarray:
    """Coefficient tensor c(n1..nk) on the truncation box."""
    axes = []
    for j in range(1, k + 1):
        n = sizes[j - 1]
        if mode == "poly":
            vec = np.zeros(n)
            deg = min(4, n - 1)
            vec[: deg + 1] = v[f"seq_r{j}"] ** np.arange(deg + 1) / (1.0 + np.arange(deg + 1))
        else:
            vec = (
                q_pochhammer_table(q ** v[f"seq_a{j}"], n - 1, q)
                / q_pochhammer_table(q, n - 1, q)
            )
        axes.append(vec)
    tensor = axes[0].reshape((-1,) + (1,) * (k - 1))
    for j in range(1, k):
        shape = [1] * k
        shape[j] = sizes[j]
        tensor = tensor * axes[j].reshape(shape)
    if mode == "hyper":
        joint = q_pochhammer_table(q ** v["seq_b"], sum(sizes) - k, q)
        grids = np.indices(sizes).sum(axis=0)
        tensor = tensor * joint[grids]
    return tensor


def _jv_sizes(v, k: int, mode: str, tol: float):
    if mode == "poly":
        return [6] * k
    out = []
    for j in range(1, k + 1):
        az = abs(v[f"z{j}"])
        out.append(int(np.clip(math.ceil(math.log(tol * 1e-2) / math.log(max(az, 1e-6))) + 4, 8, 40)))
    return out


def _lhs_joshi_vyas(pt, s: EvalSettings):
    v = pt.flat()
    k, mode = JV_VARIANTS[int(v["variant"])]
    q = s.q
    sizes = _jv_sizes(v, k, mode, s.series_tol)
    tensor = _jv_coeff_tensor(v, k, mode, sizes, q)
    for j in range(1, k + 1):
        n = sizes[j - 1]
        mom = (
            q_pochhammer_table(q ** v[f"nu{j}"], n - 1, q)
            * q_pochhammer_table(q ** v[f"lam{j}"], n - 1, q)
            / (
                q_pochhammer_table(q ** v[f"gamma{j}"], n - 1, q)
                * q_pochhammer_table(q ** v[f"eta{j}"], n - 1, q)
            )
        )
        vec = mom * v[f"z{j}"] ** np.arange(n)
        shape = [1] * k
        shape[j - 1] = n
        tensor = tensor * vec.reshape(shape)
    return complex(tensor.sum())


def _rhs_joshi_vyas(pt, s: EvalSettings):
    # Termwise Jackson integration: each axis moment is an actual lattice
    # sum against the measure rule, never the closed form.
    v = pt.flat()
    k, mode = JV_VARIANTS[int(v["variant"])]
    ctx = s.qctx
    sizes = _jv_sizes(v, k, mode, s.series_tol)
    tensor = _jv_coeff_tensor(v, k, mode, sizes, s.q)
    for j in range(1, k + 1):
        spec = QHypergeometricMeasure(
            v[f"eta{j}"] - v[f"lam{j}"],
            v[f"gamma{j}"] - v[f"lam{j}"],
            v[f"gamma{j}"] - v[f"lam{j}"] + v[f"eta{j}"] - v[f"nu{j}"],
            v[f"nu{j}"],
            ctx,
        )
        t, w = q_measure_rule(spec, s.jackson_scale)
        vec = _moment_powers(t, w, v[f"z{j}"], sizes[j - 1] - 1)
        shape = [1] * k
        shape[j - 1] = sizes[j - 1]
        tensor = tensor * vec.reshape(shape)
    return complex(tensor.sum())


def _jv_constraints() -> tuple:
    out = []
    for j in (1, 2, 3):
        def chk(pt, j=j):
            v = pt.values
            if f"lam{j}" not in v:
                return True
            return (
                v[f"lam{j}"] > 0
                and v[f"nu{j}"] > 0
                and v[f"gamma{j}"] + v[f"eta{j}"] - v[f"lam{j}"] - v[f"nu{j}"] > 0
            )

        out.append(Constraint(f"axis {j} measure hypotheses", chk))
    return tuple(out)


# ---------------------------------------------------------------------------
# Triple-series corollaries
# ---------------------------------------------------------------------------


def _sample_qfk_phi3(rng, x_zero=False) -> ParameterPoint:
    vals = {
        "alpha1": _u(rng, 0.1, 2.2), "alpha2": _u(rng, 0.1, 2.2),
        "beta1": _u(rng, 0.1, 2.2), "beta2": _u(rng, 0.1, 2.2),
    }
    for j in (1, 2, 3):
        lam = _u(rng, 0.5, 1.0)
        nu = _u(rng, 0.5, 1.0)
        gamma = _u(rng, 0.5, 1.5)
        eta = nu - gamma + lam + _u(rng, 0.4, 1.2)
        vals.update({f"lam{j}": lam, f"nu{j}": nu, f"gamma{j}": gamma, f"eta{j}": eta})
    x, y, z = _qargs(rng)
    return ParameterPoint(values=vals, arguments={"x": 0.0 if x_zero else x, "y": y, "z": z})


_QFK_PHI3_CONSTRAINTS = tuple(
    _pos(f"min hypotheses axis {j}", lambda v, j=j: min(
        v[f"gamma{j}"] + v[f"eta{j}"] - v[f"lam{j}"] - v[f"nu{j}"], v[f"lam{j}"], v[f"nu{j}"]
    ))
    for j in (1, 2, 3)
)


def _lhs_qfk_phi3(pt, s: EvalSettings):
    v = pt.flat()
    p = FkParams(
        alpha1=v["alpha1"], alpha2=v["alpha2"], beta1=v["beta1"], beta2=v["beta2"],
        gamma1=v["gamma1"], gamma2=v["gamma2"], gamma3=v["gamma3"],
    )
    return _phi_k_value(p, v["x"], v["y"], v["z"], s)


def _rhs_qfk_phi3(pt, s: EvalSettings):
    v = pt.flat()
    q = s.q
    ctx = s.qctx
    rules = [
        q_measure_rule(
            QHypergeometricMeasure(
                v[f"eta{j}"] - v[f"lam{j}"],
                v[f"gamma{j}"] - v[f"lam{j}"],
                v[f"gamma{j}"] - v[f"lam{j}"] + v[f"eta{j}"] - v[f"nu{j}"],
                v[f"nu{j}"],
                ctx,
            ),
            s.jackson_scale,
        )
        for j in (1, 2, 3)
    ]
    (t1, w1), (t2, w2), (t3, w3) = rules
    pmax = _phi_k_pmax(abs(v["z"]), s.series_tol)
    shifts = q ** np.arange(pmax + 1, dtype=np.float64)
    coef = (
        q_pochhammer_table(q ** v["alpha2"], pmax, q)
        * q_pochhammer_table(q ** v["beta1"], pmax, q)
        * q_pochhammer_table(q ** v["eta3"], pmax, q)
        / (
            q_pochhammer_table(q ** v["nu3"], pmax, q)
            * q_pochhammer_table(q ** v["lam3"], pmax, q)
            * q_pochhammer_table(q, pmax, q)
        )
    )
    A, *_ = _rphis_array(
        [q ** v["beta1"] * shifts, q ** v["alpha1"], q ** v["eta1"]],
        [q ** v["nu1"], q ** v["lam1"]],
        (v["x"] * t1)[:, None],
        ctx,
        tol=s.series_tol * 1e-2,
    )
    B, *_ = _rphis_array(
        [q ** v["alpha2"] * shifts, q ** v["beta2"], q ** v["eta2"]],
        [q ** v["nu2"], q ** v["lam2"]],
        (v["y"] * t2)[:, None],
        ctx,
        tol=s.series_tol * 1e-2,
    )
    SA = w1 @ A
    SB = w2 @ B
    SC = _moment_powers(t3, w3, v["z"], pmax)
    return complex((coef * SA * SB * SC).sum())


def _sample_qfk_lr(rng) -> ParameterPoint:
    vals = {"alpha2": _u(rng, 0.1, 2.2), "beta1": _u(rng, 0.1, 2.2)}
    for j, sym in ((1, "alpha1"), (2, "beta2")):
        base = _u(rng, 0.5, 1.0)
        nu = _u(rng, 0.5, 1.0)
        gamma = _u(rng, 0.5, 1.5)
        eta = base + nu - gamma + _u(rng, 0.4, 1.2)
        vals.update({sym: base, f"nu{j}": nu, f"gamma{j}": gamma, f"eta{j}": eta})
    nu3 = _u(rng, 0.5, 0.9)
    vals.update({"nu3": nu3, "gamma3": nu3 + _u(rng, 0.4, 1.2)})
    x, y, z = _qargs(rng)
    return ParameterPoint(values=vals, arguments={"x": x, "y": y, "z": z})


_QFK_LR_CONSTRAINTS = (
    _pos("axis 1 hypotheses", lambda v: min(
        v["gamma1"] + v["eta1"] - v["alpha1"] - v["nu1"], v["alpha1"], v["nu1"])),
    _pos("axis 2 hypotheses", lambda v: min(
        v["gamma2"] + v["eta2"] - v["beta2"] - v["nu2"], v["beta2"], v["nu2"])),
    _pos("Re(gamma3) > Re(nu3) > 0", lambda v: min(v["gamma3"] - v["nu3"], v["nu3"])),
)


def _rhs_qfk_lr(pt, s: EvalSettings):
    v = pt.flat()
    ctx = s.qctx
    rules = [
        q_measure_rule(
            QHypergeometricMeasure(
                v["eta1"] - v["alpha1"], v["gamma1"] - v["alpha1"],
                v["gamma1"] - v["alpha1"] + v["eta1"] - v["nu1"], v["nu1"], ctx,
            ),
            s.jackson_scale,
        ),
        q_measure_rule(
            QHypergeometricMeasure(
                v["eta2"] - v["beta2"], v["gamma2"] - v["beta2"],
                v["gamma2"] - v["beta2"] + v["eta2"] - v["nu2"], v["nu2"], ctx,
            ),
            s.jackson_scale,
        ),
        q_measure_rule(QDirichletMeasure(v["nu3"], v["gamma3"] - v["nu3"], ctx), s.jackson_scale),
    ]
    inner = FkParams(
        alpha1=v["eta1"], alpha2=v["alpha2"], beta1=v["beta1"], beta2=v["eta2"],
        gamma1=v["nu1"], gamma2=v["nu2"], gamma3=v["nu3"],
    )
    return _phi_k_integral(inner, rules, v["x"], v["y"], v["z"], s)


# ---------------------------------------------------------------------------
# Discrete finite-sum analogue
# ---------------------------------------------------------------------------


def _base_ok(value: float, q: float, reach: int, margin: float = 0.04) -> bool:
    """Reject raw bases within margin of the pole lattice q^-m, m < reach."""
    for m in range(reach):
        if abs(value - q ** (-m)) < margin * q ** (-m):
            return False
    return True


def _sample_gasper_discrete(rng) -> ParameterPoint:
    n = int(rng.integers(0, 4))
    return ParameterPoint(
        values={
            "alpha": _u(rng, 0.15, 0.9), "beta": _u(rng, 0.15, 0.9),
            "gamma": _u(rng, 0.15, 0.9), "delta": _u(rng, 0.15, 0.9),
            "lam": _u(rng, 0.2, 0.9), "mu": _u(rng, 0.2, 0.9), "nu": _u(rng, 0.2, 0.9),
        },
        arguments={"n": float(n)},
    )


def _gasper_discrete_constraints(q_grid=(0.3, 0.5, 0.7)) -> tuple:
    """The derived lower bases gamma*mu/(lam*nu) and q^(1-n)/lam must keep a
    margin from the pole lattice q^-m for every verification q."""

    def ok(pt):
        v = pt.values
        n = int(pt.arguments["n"])
        for q in q_grid:
            gm = v["gamma"] * v["mu"] / (v["lam"] * v["nu"])
            if not _base_ok(gm, q, n + 1):
                return False
            if not _base_ok(q ** float(1 - n) / v["lam"], q, n + 1):
                return False
        return True

    return (Constraint("derived bases off the pole lattice", ok),)


def _lhs_gasper_discrete(pt, s: EvalSettings):
    v = pt.flat()
    q = s.q
    n = int(v["n"])
    out, *_ = _rphis_array(
        [v["alpha"], v["beta"], q ** float(-n)],
        [v["gamma"], v["delta"]],
        q,
        s.qctx,
        terminate_after=n,
    )
    return complex(out[()])


def _rhs_gasper_discrete(pt, s: EvalSettings):
    from .qkernels import gasper_discrete_3phi2

    v = pt.flat()
    return complex(
        gasper_discrete_3phi2(
            v["alpha"], v["beta"], v["gamma"], v["delta"],
            v["lam"], v["mu"], v["nu"], int(v["n"]), s.qctx,
        )
    )


def _sample_fk_discrete(rng) -> ParameterPoint:
    rst = (2, 2, 2) if rng.integers(0, 2) == 0 else (3, 1, 2)
    vals = {
        "alpha1": _u(rng, 0.2, 2.0), "beta2": _u(rng, 0.2, 2.0),
        "alpha2": _u(rng, 0.2, 2.0), "beta1": _u(rng, 0.2, 2.0),
        "delta1": _u(rng, 0.15, 0.9), "delta2": _u(rng, 0.15, 0.9), "delta3": _u(rng, 0.15, 0.9),
        "r": float(rst[0]), "s": float(rst[1]), "t": float(rst[2]),
    }
    for j, sym in ((1, "alpha1"), (2, "beta2")):
        gamma = _u(rng, 0.5, 2.0)
        lam = _u(rng, 0.2, 1.8)
        mu = gamma + lam - vals[sym] - _u(rng, 0.3, min(1.5, gamma + lam - vals[sym] - 0.05)) \
            if gamma + lam - vals[sym] > 0.4 else -1.0
        vals.update({f"gamma{j}": gamma, f"lam{j}": lam, f"mu{j}": mu})
    vals["gamma3"] = _u(rng, 0.5, 2.0)
    vals["mu3"] = _u(rng, 0.2, 1.8)
    return ParameterPoint(values=vals, arguments={})


_FK_DISCRETE_CONSTRAINTS = (
    _pos("gl1 = gamma1+lam1-alpha1-mu1 > 0", lambda v: v["gamma1"] + v["lam1"] - v["alpha1"] - v["mu1"]),
    _pos("gl2 = gamma2+lam2-beta2-mu2 > 0", lambda v: v["gamma2"] + v["lam2"] - v["beta2"] - v["mu2"]),
    _pos("mu1 > 0", lambda v: v["mu1"]),
    _pos("mu2 > 0", lambda v: v["mu2"]),
    Constraint(
        "alpha1, beta2 off the integers",
        lambda pt: abs(pt.values["alpha1"] - round(pt.values["alpha1"])) > 0.05
        and abs(pt.values["beta2"] - round(pt.values["beta2"])) > 0.05,
    ),
)


def _fk_discrete_params(v) -> DiscreteFkParams:
    return DiscreteFkParams(
        alpha1=v["alpha1"], beta2=v["beta2"],
        gamma1=v["gamma1"], gamma2=v["gamma2"], gamma3=v["gamma3"],
        lam1=v["lam1"], lam2=v["lam2"],
        mu1=v["mu1"], mu2=v["mu2"], mu3=v["mu3"],
    )


def _fk_discrete_spec(q, al2, be1, c_entries, cp_entries, cpp_entries, h2, hp2, hpp2, deltas):
    return Phi3Spec(
        bp=(q**al2,), bpp=(q**be1,),
        c=c_entries, cp=cp_entries, cpp=cpp_entries,
        h=(q**h2, deltas[0]), hp=(q**hp2, deltas[1]), hpp=(q**hpp2, deltas[2]),
    )


def _lhs_fk_discrete(pt, s: EvalSettings):
    v = pt.flat()
    q = s.q
    r, s_, t = int(v["r"]), int(v["s"]), int(v["t"])
    spec = _fk_discrete_spec(
        q, v["alpha2"], v["beta1"],
        (q ** v["alpha1"], q ** float(-r)), (q ** v["beta2"], q ** float(-s_)), (q ** float(-t),),
        v["gamma1"], v["gamma2"], v["gamma3"],
        (v["delta1"], v["delta2"], v["delta3"]),
    )
    return complex(phi3(spec, q, q, q, s.qctx, s.series_tol).value)


def _rhs_fk_discrete(pt, s: EvalSettings):
    v = pt.flat()
    q = s.q
    ctx = s.qctx
    r, s_, t = int(v["r"]), int(v["s"]), int(v["t"])
    p = _fk_discrete_params(v)
    deltas = (v["delta1"], v["delta2"], v["delta3"])
    total = 0.0
    for i in range(r + 1):
        w1 = discrete_weight("w1", i, r, p, ctx)
        for j in range(s_ + 1):
            w2 = discrete_weight("w2", j, s_, p, ctx)
            for k in range(t + 1):
                w3 = discrete_weight("w3", k, t, p, ctx)
                spec = _fk_discrete_spec(
                    q, v["alpha2"], v["beta1"],
                    (q ** v["lam1"], q ** float(-i)), (q ** v["lam2"], q ** float(-j)), (q ** float(-k),),
                    v["mu1"], v["mu2"], v["mu3"],
                    deltas,
                )
                total += w1 * w2 * w3 * complex(phi3(spec, q, q, q, ctx, s.series_tol).value)
    return complex(total)


def _sample_fk_limits(rng) -> ParameterPoint:
    vals = {"alpha2": _u(rng, 0.1, 2.2), "beta1": _u(rng, 0.1, 2.2)}
    for j, sym in ((1, "alpha1"), (2, "beta2")):
        base = _u(rng, 0.3, 1.2)
        mu = _u(rng, 0.5, 1.2)
        gamma = _u(rng, 0.5, 1.5)
        lam = base + mu - gamma + _u(rng, 0.4, 1.2)
        vals.update({sym: base, f"gamma{j}": gamma, f"lam{j}": lam, f"mu{j}": mu})
    mu3 = _u(rng, 0.5, 1.0)
    vals.update({"mu3": mu3, "gamma3": mu3 + _u(rng, 0.4, 1.2)})
    x, y, z = _qargs(rng)
    return ParameterPoint(values=vals, arguments={"x": x, "y": y, "z": z})


_FK_LIMITS_CONSTRAINTS = (
    _pos("axis 1 hypotheses", lambda v: min(
        v["gamma1"] + v["lam1"] - v["alpha1"] - v["mu1"], v["alpha1"], v["mu1"])),
    _pos("axis 2 hypotheses", lambda v: min(
        v["gamma2"] + v["lam2"] - v["beta2"] - v["mu2"], v["beta2"], v["mu2"])),
    _pos("Re(gamma3) > Re(mu3) > 0", lambda v: min(v["gamma3"] - v["mu3"], v["mu3"])),
)


def _rhs_fk_limits(pt, s: EvalSettings):
    """Triple sum of limit weights times the shifted q-F_K; the lattice-sum
    rewrite of the corollary reached by sending the truncation orders of the
    discrete identity to infinity."""
    v = pt.flat()
    q = s.q
    ctx = s.qctx
    p = _fk_discrete_params(v)

    def w_tail(which, cap=500):
        # The effective decay exponent is the measure's mass exponent (the
        # base parameter), not mu: the terminating 3phi1 inside the weight
        # grows when the base is smaller than mu.  Extend until negligible.
        out = []
        small = 0
        for i in range(cap):
            w = discrete_weight_limit(which, i, p, ctx)
            out.append(w)
            if abs(w) < 1e-14 * max(1.0, s.jackson_scale):
                small += 1
                if small >= 3:
                    break
            else:
                small = 0
        return np.array(out)

    W1 = w_tail("w1")
    W2 = w_tail("w2")
    W3 = w_tail("w3")
    I, J, K = len(W1), len(W2), len(W3)
    inner = FkParams(
        alpha1=v["lam1"], alpha2=v["alpha2"], beta1=v["beta1"], beta2=v["lam2"],
        gamma1=v["mu1"], gamma2=v["mu2"], gamma3=v["mu3"],
    )
    pmax = _phi_k_pmax(abs(v["z"]), s.series_tol)
    coef, A, B = phi_k_p_tables(
        inner,
        v["x"] * q ** np.arange(I, dtype=np.float64),
        v["y"] * q ** np.arange(J, dtype=np.float64),
        ctx,
        pmax,
        tol=s.series_tol * 1e-2,
    )
    SA = W1 @ A
    SB = W2 @ B
    zk = v["z"] * q ** np.arange(K, dtype=np.float64)
    SC = W3 @ np.power(zk[:, None], np.arange(pmax + 1)[None, :])
    return complex((coef * SA * SB * SC).sum())


# ---------------------------------------------------------------------------
# Shift-operator q-Erdelyi integral and its simplification
# ---------------------------------------------------------------------------


def _sample_qfk_erdelyi(rng) -> ParameterPoint:
    lam1 = _u(rng, 0.4, 0.8)
    alpha1 = _u(rng, 0.3, 1.0)
    eta1 = lam1 - alpha1 + _u(rng, 0.5, 1.2)
    lam2 = _u(rng, 0.4, 0.8)
    beta2 = _u(rng, 0.3, 1.0)
    mu2 = lam2 - beta2 + _u(rng, 0.5, 1.2)
    lam3 = _u(rng, 0.3, 0.7)
    beta1 = lam3 + _u(rng, 0.3, 0.8)
    gamma3 = beta1 + _u(rng, 0.5, 1.0)
    eta2 = _u(rng, 0.1, 0.8)
    alpha2 = eta2 + _u(rng, 0.1, 1.0)
    x, y, z = _qargs(rng)
    return ParameterPoint(
        values={
            "alpha1": alpha1, "alpha2": alpha2, "beta1": beta1, "beta2": beta2,
            "gamma3": gamma3, "eta1": eta1, "eta2": eta2, "mu2": mu2,
            "lam1": lam1, "lam2": lam2, "lam3": lam3,
        },
        arguments={"x": x, "y": y, "z": z},
    )


_QFK_ERDELYI_CONSTRAINTS = (
    _pos("Re(alpha1+eta1) > Re(lam1)", lambda v: v["alpha1"] + v["eta1"] - v["lam1"]),
    _pos("Re(lam1) > 0", lambda v: v["lam1"]),
    _pos("Re(beta2+mu2) > Re(lam2)", lambda v: v["beta2"] + v["mu2"] - v["lam2"]),
    _pos("Re(lam2) > 0", lambda v: v["lam2"]),
    _pos("Re(gamma3) > Re(beta1)", lambda v: v["gamma3"] - v["beta1"]),
    _pos("Re(beta1) > 0", lambda v: v["beta1"]),
)


def _lhs_qfk_erdelyi(pt, s: EvalSettings):
    v = pt.flat()
    p = FkParams(
        alpha1=v["alpha1"], alpha2=v["alpha2"], beta1=v["beta1"], beta2=v["beta2"],
        gamma1=v["alpha1"] + v["eta1"], gamma2=v["beta2"] + v["mu2"], gamma3=v["gamma3"],
    )
    return _phi_k_value(p, v["x"], v["y"], v["z"], s)


def _rhs_qfk_erdelyi(pt, s: EvalSettings):
    v = pt.flat()
    q = s.q
    ctx = s.qctx
    x, y, z = v["x"], v["y"], v["z"]
    tu, wu = q_measure_rule(
        QDirichletMeasure(v["alpha1"] - v["lam1"] + v["eta1"], v["lam1"], ctx), s.jackson_scale
    )
    tv, wv = q_measure_rule(
        QDirichletMeasure(v["beta2"] - v["lam2"] + v["mu2"], v["lam2"], ctx), s.jackson_scale
    )
    tw, ww = q_measure_rule(
        QDirichletMeasure(v["beta1"], v["gamma3"] - v["beta1"], ctx), s.jackson_scale
    )
    base = abs(z) * q ** (v["alpha2"] - v["eta2"])
    if base >= 0.999:
        raise DomainError("shift-operator series non-convergent at this point")
    kmax = 0 if z == 0 else int(
        np.clip(math.ceil(math.log(s.series_tol * 1e-2) / math.log(max(base, 1e-12))), 8, 240)
    )
    ks = np.arange(kmax + 1, dtype=np.float64)
    C1 = (
        q_pochhammer_table(q ** v["eta2"], kmax, q)
        / q_pochhammer_table(q, kmax, q)
        * (q ** (v["alpha2"] - v["eta2"])) ** ks
    )

    iu = np.arange(len(tu))[:, None]
    shiftA = (q ** (v["lam3"] + ks))[None, :]
    uu = tu[:, None]
    prefA = q_pochhammer_inf(uu * x * shiftA, ctx) / q_pochhammer_inf(uu * x, ctx)
    phiA, *_ = _rphis_array(
        [shiftA, q ** (v["lam1"] - v["eta1"]), 1.0 / uu],
        [q ** v["lam1"], q / (uu * x)],
        q,
        ctx,
        terminate_after=iu,
    )
    A = prefA * phiA

    iv = np.arange(len(tv))[:, None]
    shiftB = (q ** (v["eta2"] + ks))[None, :]
    vv = tv[:, None]
    prefB = q_pochhammer_inf(vv * y * shiftB, ctx) / q_pochhammer_inf(vv * y, ctx)
    phiB, *_ = _rphis_array(
        [shiftB, q ** (v["lam2"] - v["mu2"]), 1.0 / vv],
        [q ** v["lam2"], q / (vv * y)],
        q,
        ctx,
        terminate_after=iv,
    )
    B = prefB * phiB

    inner = FkParams(
        alpha1=v["alpha1"], alpha2=v["alpha2"] - v["eta2"],
        beta1=v["beta1"] - v["lam3"], beta2=v["beta2"],
        gamma1=v["alpha1"] - v["lam1"] + v["eta1"],
        gamma2=v["beta2"] - v["lam2"] + v["mu2"],
        gamma3=v["beta1"] - v["lam3"],
    )
    pmax = _phi_k_pmax(abs(z), s.series_tol)
    coef, FA, FB = phi_k_p_tables(
        inner,
        uu * x * (q ** (ks + v["lam3"]))[None, :],
        vv * y * (q ** (ks + v["eta2"]))[None, :],
        ctx,
        pmax,
        tol=s.series_tol * 1e-2,
    )
    SU = np.einsum("i,ik,ikp->kp", wu, A, FA)
    SV = np.einsum("j,jk,jkp->kp", wv, B, FB)
    smax = kmax + pmax
    SW_s = (ww[:, None] * np.power(tw[:, None] * z, np.arange(smax + 1)[None, :])).sum(axis=0)
    SW = SW_s[np.add.outer(np.arange(kmax + 1), np.arange(pmax + 1))]
    return complex(np.einsum("k,p,kp,kp,kp->", C1, coef, SU, SV, SW))


def _sample_qfk_simplified(rng) -> ParameterPoint:
    beta1 = _u(rng, 0.5, 1.0)
    x, y, z = _qargs(rng)
    return ParameterPoint(
        values={
            "alpha1": _u(rng, 0.5, 1.2), "alpha2": _u(rng, 0.1, 2.2),
            "beta1": beta1, "beta2": _u(rng, 0.5, 1.2),
            "eta1": _u(rng, 0.4, 1.2), "mu2": _u(rng, 0.4, 1.2),
            "gamma3": beta1 + _u(rng, 0.4, 1.0),
        },
        arguments={"x": x, "y": y, "z": z},
    )


_QFK_SIMPLIFIED_CONSTRAINTS = (
    _pos("min(alpha1, eta1, beta2, mu2) > 0",
         lambda v: min(v["alpha1"], v["eta1"], v["beta2"], v["mu2"])),
    _pos("Re(gamma3) > Re(beta1)", lambda v: v["gamma3"] - v["beta1"]),
    _pos("Re(beta1) > 0", lambda v: v["beta1"]),
)


def _lhs_qfk_simplified(pt, s: EvalSettings):
    v = pt.flat()
    p = FkParams(
        alpha1=v["alpha1"], alpha2=v["alpha2"], beta1=v["beta1"], beta2=v["beta2"],
        gamma1=v["alpha1"] + v["eta1"], gamma2=v["beta2"] + v["mu2"], gamma3=v["gamma3"],
    )
    return _phi_k_value(p, v["x"], v["y"], v["z"], s)


def _rhs_qfk_simplified(pt, s: EvalSettings):
    v = pt.flat()
    q = s.q
    ctx = s.qctx
    x, y, z = v["x"], v["y"], v["z"]
    tu, wu = q_measure_rule(QDirichletMeasure(v["alpha1"], v["eta1"], ctx), s.jackson_scale)
    tv, wv = q_measure_rule(QDirichletMeasure(v["beta2"], v["mu2"], ctx), s.jackson_scale)
    tw, ww = q_measure_rule(
        QDirichletMeasure(v["beta1"], v["gamma3"] - v["beta1"], ctx), s.jackson_scale
    )
    K = 0 if z == 0 else int(
        np.clip(math.ceil(math.log(s.series_tol * 1e-2) / math.log(abs(z))), 8, 240)
    )
    cK = q_pochhammer_table(q ** v["alpha2"], K, q) / q_pochhammer_table(q, K, q)
    baseU = tu * x * q ** v["beta1"]
    baseV = tv * y * q ** v["alpha2"]
    prefU = q_pochhammer_inf(baseU, ctx) / q_pochhammer_inf(tu * x, ctx)
    prefV = q_pochhammer_inf(baseV, ctx) / q_pochhammer_inf(tv * y, ctx)
    SU = (wu * prefU) @ (1.0 / _k_table(baseU, K, q))
    SV = (wv * prefV) @ (1.0 / _k_table(baseV, K, q))
    SW = _moment_powers(tw, ww, z, K)
    return complex((cK * SU * SV * SW).sum())


# ---------------------------------------------------------------------------
# Cross-form consistency of the two q-F_K evaluations
# ---------------------------------------------------------------------------


def _sample_phik_cross(rng) -> ParameterPoint:
    x, y, z = _qargs(rng)
    return ParameterPoint(
        values={
            "alpha1": _u(rng, 0.1, 2.5), "alpha2": _u(rng, 0.1, 2.5),
            "beta1": _u(rng, 0.1, 2.5), "beta2": _u(rng, 0.1, 2.5),
            "gamma1": _u(rng, 0.5, 2.5), "gamma2": _u(rng, 0.5, 2.5),
            "gamma3": _u(rng, 0.5, 2.5),
        },
        arguments={"x": x, "y": y, "z": z},
    )


def _lhs_phik_cross(pt, s: EvalSettings):
    from .qkernels import _phi_k_spec

    v = pt.flat()
    return complex(phi3(_phi_k_spec(_outer_fk(v), s.q), v["x"], v["y"], v["z"], s.qctx, s.series_tol).value)


def _rhs_phik_cross(pt, s: EvalSettings):
    v = pt.flat()
    return _phi_k_value(_outer_fk(v), v["x"], v["y"], v["z"], s)


# ---------------------------------------------------------------------------
# Registry assembly
# ---------------------------------------------------------------------------


def build() -> tuple[IdentityCase, ...]:
    return (
        IdentityCase(
            id="gasper-q-erdelyi-1", anchor="Eq. (2.1)",
            constraints=(
                _pos("Re(gamma) > Re(lam)", lambda v: v["gamma"] - v["lam"]),
                _pos("Re(lam) > 0", lambda v: v["lam"]),
            ),
            sampler=_sample_gasper1, lhs=_lhs_2phi1, rhs=_rhs_gasper1,
            tol=1e-8, cost_class="q-lattice", uses_q=True, default_samples=8,
        ),
        IdentityCase(
            id="gasper-q-erdelyi-3", anchor="Eq. (2.3)",
            constraints=(
                _pos("Re(lam) > 0", lambda v: v["lam"]),
                _pos("Re(nu) > 0", lambda v: v["nu"]),
                _pos("Re(gamma+eta-lam-nu) > 0", lambda v: v["gamma"] + v["eta"] - v["lam"] - v["nu"]),
            ),
            sampler=_sample_gasper3, lhs=_lhs_2phi1, rhs=_rhs_gasper3,
            tol=1e-8, cost_class="q-lattice", uses_q=True, default_samples=8,
        ),
        IdentityCase(
            id="ernst-q-bateman", anchor="Bateman-type q-integral",
            constraints=tuple(
                _pos(f"0 < nu{j} < gamma{j}", lambda v, j=j: min(v[f"nu{j}"], v[f"gamma{j}"] - v[f"nu{j}"]))
                for j in (1, 2, 3)
            ),
            sampler=_sample_ernst, lhs=_lhs_phi_k, rhs=_rhs_ernst,
            tol=1e-8, cost_class="q-lattice", uses_q=True, default_samples=6,
        ),
        IdentityCase(
            id="joshi-vyas-general", anchor="Theorem 4.1",
            constraints=_jv_constraints(),
            sampler=_sample_joshi_vyas, lhs=_lhs_joshi_vyas, rhs=_rhs_joshi_vyas,
            tol=1e-8, cost_class="q-lattice", uses_q=True, default_samples=9,
        ),
        IdentityCase(
            id="qfk-phi3", anchor="Corollary 4.2",
            constraints=_QFK_PHI3_CONSTRAINTS,
            sampler=_sample_qfk_phi3, lhs=_lhs_qfk_phi3, rhs=_rhs_qfk_phi3,
            tol=1e-8, cost_class="q-lattice", uses_q=True, default_samples=6,
        ),
        IdentityCase(
            id="qfk-phi3-x0", anchor="Corollary 4.2 at x=0",
            constraints=_QFK_PHI3_CONSTRAINTS,
            sampler=lambda rng: _sample_qfk_phi3(rng, x_zero=True),
            lhs=_lhs_qfk_phi3, rhs=_rhs_qfk_phi3,
            tol=1e-8, cost_class="q-lattice", uses_q=True, default_samples=6,
        ),
        IdentityCase(
            id="qfk-lr", anchor="Corollary 4.3",
            constraints=_QFK_LR_CONSTRAINTS,
            sampler=_sample_qfk_lr, lhs=_lhs_qfk_phi3, rhs=_rhs_qfk_lr,
            tol=1e-8, cost_class="q-lattice", uses_q=True, default_samples=6,
        ),
        IdentityCase(
            id="gasper-discrete", anchor="Eq. (2.4)",
            constraints=_gasper_discrete_constraints(),
            sampler=_sample_gasper_discrete, lhs=_lhs_gasper_discrete, rhs=_rhs_gasper_discrete,
            tol=1e-12, cost_class="cheap", uses_q=True, default_samples=10,
        ),
        IdentityCase(
            id="fk-discrete", anchor="Theorem 4.4",
            constraints=_FK_DISCRETE_CONSTRAINTS,
            sampler=_sample_fk_discrete, lhs=_lhs_fk_discrete, rhs=_rhs_fk_discrete,
            tol=1e-12, cost_class="cheap", uses_q=True, default_samples=10,
        ),
        IdentityCase(
            id="fk-discrete-limits", anchor="Eqs. (4.6)-(4.9)",
            constraints=_FK_LIMITS_CONSTRAINTS,
            sampler=_sample_fk_limits, lhs=_lhs_qfk_phi3, rhs=_rhs_fk_limits,
            tol=1e-8, cost_class="q-lattice", uses_q=True, default_samples=5,
        ),
        IdentityCase(
            id="qfk-erdelyi", anchor="Theorem 4.6",
            constraints=_QFK_ERDELYI_CONSTRAINTS,
            sampler=_sample_qfk_erdelyi, lhs=_lhs_qfk_erdelyi, rhs=_rhs_qfk_erdelyi,
            tol=1e-8, cost_class="q-lattice", uses_q=True, default_samples=6,
        ),
        IdentityCase(
            id="qfk-erdelyi-simplified", anchor="Corollary 4.7",
            constraints=_QFK_SIMPLIFIED_CONSTRAINTS,
            sampler=_sample_qfk_simplified, lhs=_lhs_qfk_simplified, rhs=_rhs_qfk_simplified,
            tol=1e-8, cost_class="q-lattice", uses_q=True, default_samples=6,
        ),
        IdentityCase(
            id="phik-cross-form", anchor="Eqs. (1.15)/(1.16)",
            constraints=(Constraint("|args| < 1", lambda pt: max(abs(a) for a in pt.arguments.values()) < 1),),
            sampler=_sample_phik_cross, lhs=_lhs_phik_cross, rhs=_rhs_phik_cross,
            tol=1e-10, cost_class="cheap", uses_q=True, default_samples=15,
        ),
    )
