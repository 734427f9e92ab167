"""Classical (q = 1) integral identities: Euler, Bateman and Erdelyi
integrals for 2F1, the Erdelyi-type triple integral for Saran's F_K, the
curious F2 representation, Manocha's integral and its reduction, and the
convolution-family extension.

Right-hand sides are evaluated by weighted quadrature rules with all series
factors vectorized over the nodes; left-hand sides go through the scalar
series engines.  The two sides never share a code path beyond the scalar
2F1 primitive.
"""

from __future__ import annotations

import math

import numpy as np
import scipy.special as sps

from .core import pochhammer_table
from .measures import DirichletMeasure, HypergeometricMeasure, measure_rule
from .registry import Constraint, IdentityCase, ParameterPoint
from .series import (
    CoeffSequence2D,
    FkParams,
    _eval_2f1,
    appell_f2,
    convolve2d,
    delta_sequence,
    fk_diagonal_sequence,
    gauss_2f1,
    generic_f_a,
    geometric_sequence,
    in_domain_fk,
    saran_fk_reexpand,
    saran_fk_triple,
)

# ---------------------------------------------------------------------------
# Sampling helpers
# ---------------------------------------------------------------------------


def _u(rng, lo, hi):
    return float(rng.uniform(lo, hi))


def _gap_pair(rng, lo=0.4, hi=1.0, gap_lo=0.4, gap_hi=1.2):
    """(small, large) with large = small + uniform gap; models a > b > 0."""
    small = _u(rng, lo, hi)
    return small, small + _u(rng, gap_lo, gap_hi)


def _fk_args(rng, shrink=0.8):
    x = _u(rng, 0.05, 0.45)
    y = _u(rng, 0.05, 0.45)
    z = _u(rng, 0.1, 1.0) * shrink * (1.0 - x) * (1.0 - y)
    return x, y, z


def _yz_args(rng, total=0.8):
    y = _u(rng, 0.05, total - 0.1)
    z = _u(rng, 0.05, total - y)
    return y, z


def _pos(name: str, fn) -> Constraint:
    """Constraint Re(fn(symbols)) > 0 over the point's flattened symbols."""
    return Constraint(name, lambda pt, f=fn: complex(f(pt.flat())).real > 0.0)


# ---------------------------------------------------------------------------
# Shared evaluator pieces
# ---------------------------------------------------------------------------


def f2_coeff_table(a, b, c, lam, eta, M: int, N: int) -> np.ndarray:
    """Appell F2 coefficients (a)_{m+n} (b)_m (c)_n / ((lam)_m (eta)_n m! n!)
    in a balanced factorization that avoids overflow of the raw Pochhammers."""
    s = np.arange(M + N + 1, dtype=np.float64)
    r1 = np.ones(M + N + 1)
    if M + N:
        np.cumprod((a + s[:-1]) / (1.0 + s[:-1]), out=r1[1:])
    lb = sps.gammaln(np.arange(M + N + 1) + 1.0)
    binom = np.exp(
        lb[np.add.outer(np.arange(M + 1), np.arange(N + 1))]
        - lb[: M + 1][:, None]
        - lb[: N + 1][None, :]
    )
    rb = np.ones(M + 1)
    if M:
        np.cumprod((b + np.arange(M)) / (lam + np.arange(M)), out=rb[1:])
    rc = np.ones(N + 1)
    if N:
        np.cumprod((c + np.arange(N)) / (eta + np.arange(N)), out=rc[1:])
    return r1[np.add.outer(np.arange(M + 1), np.arange(N + 1))] * binom * np.outer(rb, rc)


def _ratio_table(a, b, n: int) -> np.ndarray:
    """[(a)_k / (b)_k for k = 0..n] via a running ratio."""
    out = np.ones(n + 1)
    if n:
        np.cumprod((a + np.arange(n)) / (b + np.arange(n)), out=out[1:])
    return out


def _pfq_nodes(uppers, lowers, z, t, nmax: int) -> np.ndarray:
    """Vectorized pFq(uppers; lowers; z*t) over a node array t.

    Coefficients come from the term-ratio recurrence; separate numerator and
    denominator Pochhammer tables would overflow at a few hundred terms."""
    n = np.arange(nmax - 1, dtype=np.float64)
    step = np.ones(nmax - 1)
    for a in uppers:
        step = step * (a + n)
    for b in lowers:
        step = step / (b + n)
    step = step / (1.0 + n)
    coef = np.ones(nmax)
    np.cumprod(step, out=coef[1:])
    return np.power(np.multiply.outer(t, np.ones(nmax)) * z, np.arange(nmax)[None, :]) @ coef


def _series_len(ratio: float, tol: float, lo=24, hi=220) -> int:
    if ratio <= 0.0:
        return lo
    return int(np.clip(math.ceil(math.log(tol * 1e-2) / math.log(min(ratio, 0.98))) + 8, lo, hi))


# ---------------------------------------------------------------------------
# 2F1 single-integral identities
# ---------------------------------------------------------------------------


def _sample_euler(rng) -> ParameterPoint:
    beta, gamma = _gap_pair(rng)
    return ParameterPoint(
        values={"alpha": _u(rng, 0.1, 2.5), "beta": beta, "gamma": gamma},
        arguments={"z": _u(rng, 0.05, 0.7)},
    )


def _lhs_2f1(pt, s):
    v = pt.flat()
    return complex(gauss_2f1(v["alpha"], v["beta"], v["gamma"], v["z"], s.series_tol).value)


def _rhs_euler1(pt, s):
    v = pt.flat()
    t, w = measure_rule(DirichletMeasure(v["beta"], v["gamma"] - v["beta"]), s.quad_order)
    return complex(np.sum(w * np.power(1.0 - v["z"] * t, -v["alpha"])))


def _sample_euler2(rng) -> ParameterPoint:
    alpha, gamma = _gap_pair(rng)
    return ParameterPoint(
        values={"alpha": alpha, "beta": _u(rng, 0.1, 2.5), "gamma": gamma},
        arguments={"z": _u(rng, 0.05, 0.7)},
    )


def _rhs_euler2(pt, s):
    v = pt.flat()
    t, w = measure_rule(DirichletMeasure(v["alpha"], v["gamma"] - v["alpha"]), s.quad_order)
    return complex(np.sum(w * np.power(1.0 - v["z"] * t, -v["beta"])))


def _sample_bateman(rng) -> ParameterPoint:
    lam, gamma = _gap_pair(rng)
    return ParameterPoint(
        values={
            "alpha": _u(rng, 0.1, 2.5),
            "beta": _u(rng, 0.1, 2.5),
            "gamma": gamma,
            "lam": lam,
        },
        arguments={"z": _u(rng, 0.05, 0.7)},
    )


def _rhs_bateman(pt, s):
    v = pt.flat()
    t, w = measure_rule(DirichletMeasure(v["lam"], v["gamma"] - v["lam"]), s.quad_order)
    inner, *_ = _eval_2f1(v["alpha"], v["beta"], v["lam"], v["z"] * t, s.series_tol)
    return complex(np.sum(w * inner))


def _sample_erdelyi1(rng) -> ParameterPoint:
    lam, gamma = _gap_pair(rng)
    return ParameterPoint(
        values={
            "alpha": _u(rng, 0.1, 2.5),
            "beta": _u(rng, 0.1, 2.5),
            "gamma": gamma,
            "lam": lam,
            "alphap": _u(rng, 0.1, 2.0),
        },
        arguments={"z": _u(rng, 0.05, 0.7)},
    )


def _rhs_erdelyi1(pt, s):
    v = pt.flat()
    a, b, g, lam, ap, z = (v[k] for k in ("alpha", "beta", "gamma", "lam", "alphap", "z"))
    t, w = measure_rule(DirichletMeasure(lam, g - lam), s.quad_order)
    f1, *_ = _eval_2f1(a - ap, b, lam, z * t, s.series_tol)
    f2, *_ = _eval_2f1(ap, b - lam, g - lam, (1.0 - t) * z / (1.0 - t * z), s.series_tol)
    return complex(np.sum(w * np.power(1.0 - z * t, -ap) * f1 * f2))


def _sample_erdelyi2(rng) -> ParameterPoint:
    eta, gamma = _gap_pair(rng)
    return ParameterPoint(
        values={
            "alpha": _u(rng, 0.1, 2.5),
            "beta": _u(rng, 0.1, 2.5),
            "gamma": gamma,
            "eta": eta,
            "lam": _u(rng, 0.1, 2.5),
        },
        arguments={"z": _u(rng, 0.05, 0.7)},
    )


def _rhs_erdelyi2(pt, s):
    v = pt.flat()
    a, b, g, eta, lam, z = (v[k] for k in ("alpha", "beta", "gamma", "eta", "lam", "z"))
    t, w = measure_rule(DirichletMeasure(eta, g - eta), s.quad_order)
    f1, *_ = _eval_2f1(lam - a, lam - b, eta, z * t, s.series_tol)
    f2, *_ = _eval_2f1(a + b - lam, lam - eta, g - eta, (1.0 - t) * z / (1.0 - t * z), s.series_tol)
    return complex(np.sum(w * np.power(1.0 - z * t, lam - a - b) * f1 * f2))


def _sample_erdelyi3(rng) -> ParameterPoint:
    nu = _u(rng, 0.4, 0.8)
    dl = _u(rng, 0.35, 1.45)
    lam = nu + dl
    gamma = lam + _u(rng, 0.4, 1.0)
    eta = nu + (lam - gamma) + _u(rng, 0.4, 1.2)
    return ParameterPoint(
        values={
            "alpha": _u(rng, 0.1, 2.2),
            "beta": _u(rng, 0.1, 2.2),
            "gamma": gamma,
            "eta": eta,
            "lam": lam,
            "nu": nu,
        },
        arguments={"z": _u(rng, 0.05, 0.7)},
    )


def _erdelyi3_spec(v) -> HypergeometricMeasure:
    return HypergeometricMeasure(
        v["eta"] - v["lam"],
        v["gamma"] - v["lam"],
        v["gamma"] - v["lam"] + v["eta"] - v["nu"],
        v["nu"],
    )


def _rhs_erdelyi3(pt, s):
    v = pt.flat()
    t, w = measure_rule(_erdelyi3_spec(v), s.quad_order)
    nmax = _series_len(abs(v["z"]), s.series_tol)
    vals = _pfq_nodes(
        (v["alpha"], v["beta"], v["eta"]), (v["lam"], v["nu"]), v["z"], t, nmax
    )
    return complex(np.sum(w * vals))


_ERDELYI3_CONSTRAINTS = (
    _pos("Re(nu) > 0", lambda v: v["nu"]),
    _pos("Re(lam) > 0", lambda v: v["lam"]),
    _pos("Re(gamma-lam+eta-nu) > 0", lambda v: v["gamma"] - v["lam"] + v["eta"] - v["nu"]),
    # Engineering margins for the endpoint expansion of the measure density:
    # gamma-alpha-beta of the measure equals lam-nu and must sit away from
    # the integers and from zero.
    Constraint("lam-nu > 0.3", lambda pt: pt.values["lam"] - pt.values["nu"] > 0.3),
    Constraint(
        "lam-nu off integers",
        lambda pt: abs((pt.values["lam"] - pt.values["nu"]) - round(pt.values["lam"] - pt.values["nu"])) > 0.05,
    ),
)


# ---------------------------------------------------------------------------
# Theorem-level cases: F_K triple integral
# ---------------------------------------------------------------------------


def _sample_fk_erdelyi(rng) -> ParameterPoint:
    lam1 = _u(rng, 0.4, 0.9)
    alpha1 = _u(rng, 0.3, 1.2)
    eta1 = lam1 - alpha1 + _u(rng, 0.4, 1.2)
    lam2 = _u(rng, 0.4, 0.9)
    beta2 = _u(rng, 0.3, 1.2)
    mu2 = lam2 - beta2 + _u(rng, 0.4, 1.2)
    lam3 = _u(rng, 0.3, 0.7)
    beta1 = lam3 + _u(rng, 0.3, 0.8)
    gamma3 = beta1 + _u(rng, 0.4, 1.0)
    eta2 = _u(rng, 0.1, 1.0)
    alpha2 = eta2 + _u(rng, 0.1, 1.2)
    x, y, z = _fk_args(rng)
    return ParameterPoint(
        values={
            "alpha1": alpha1, "alpha2": alpha2, "beta1": beta1, "beta2": beta2,
            "gamma3": gamma3, "eta1": eta1, "eta2": eta2, "mu2": mu2,
            "lam1": lam1, "lam2": lam2, "lam3": lam3,
        },
        arguments={"x": x, "y": y, "z": z},
    )


_FK_ERDELYI_CONSTRAINTS = (
    _pos("Re(alpha1+eta1) > Re(lam1)", lambda v: v["alpha1"] + v["eta1"] - v["lam1"]),
    _pos("Re(lam1) > 0", lambda v: v["lam1"]),
    _pos("Re(beta2+mu2) > Re(lam2)", lambda v: v["beta2"] + v["mu2"] - v["lam2"]),
    _pos("Re(lam2) > 0", lambda v: v["lam2"]),
    _pos("Re(gamma3) > Re(beta1)", lambda v: v["gamma3"] - v["beta1"]),
    _pos("Re(beta1) > 0", lambda v: v["beta1"]),
    Constraint("(x,y,z) in F_K domain", lambda pt: in_domain_fk(*(pt.arguments[k] for k in "xyz"))),
)


def _lhs_fk_erdelyi(pt, s):
    v = pt.flat()
    p = FkParams(
        alpha1=v["alpha1"], alpha2=v["alpha2"], beta1=v["beta1"], beta2=v["beta2"],
        gamma1=v["alpha1"] + v["eta1"], gamma2=v["beta2"] + v["mu2"], gamma3=v["gamma3"],
    )
    return complex(saran_fk_reexpand(p, v["x"], v["y"], v["z"], s.series_tol).value)


def fk_erdelyi_inner_tables(pt, s):
    """Quadrature contractions IU(m,n), IV(m,n) and the w-moment table for the
    F_K Erdelyi integral; also used by the proof-step consistency checks."""
    v = pt.flat()
    x, y, z = v["x"], v["y"], v["z"]
    order = s.quad_order_triple
    tu, wu = measure_rule(DirichletMeasure(v["alpha1"] - v["lam1"] + v["eta1"], v["lam1"]), order)
    tv, wv = measure_rule(DirichletMeasure(v["beta2"] - v["lam2"] + v["mu2"], v["lam2"]), order)
    tw, ww = measure_rule(DirichletMeasure(v["beta1"], v["gamma3"] - v["beta1"]), order)
    zeff = abs(z) / ((1.0 - abs(x)) * (1.0 - abs(y)))
    M = _series_len(zeff, s.series_tol, lo=16, hi=140)
    m = np.arange(M, dtype=np.float64)

    fu1, *_ = _eval_2f1(v["beta1"] - v["lam3"] + m[None, :], v["alpha1"],
                        v["alpha1"] - v["lam1"] + v["eta1"], (tu * x)[:, None], s.series_tol)
    xiu = ((1.0 - tu) * x / (1.0 - tu * x))[:, None]
    fu2, *_ = _eval_2f1(v["lam3"] + m[None, :], v["lam1"] - v["eta1"], v["lam1"], xiu, s.series_tol)
    fu2 = fu2 * np.power((1.0 - tu * x)[:, None], -(v["lam3"] + m[None, :]))
    IU = np.einsum("u,um,un->mn", wu, fu1, fu2)

    fv1, *_ = _eval_2f1(v["alpha2"] - v["eta2"] + m[None, :], v["beta2"],
                        v["beta2"] - v["lam2"] + v["mu2"], (tv * y)[:, None], s.series_tol)
    xiv = ((1.0 - tv) * y / (1.0 - tv * y))[:, None]
    fv2, *_ = _eval_2f1(v["eta2"] + m[None, :], v["lam2"] - v["mu2"], v["lam2"], xiv, s.series_tol)
    fv2 = fv2 * np.power((1.0 - tv * y)[:, None], -(v["eta2"] + m[None, :]))
    IV = np.einsum("v,vm,vn->mn", wv, fv1, fv2)

    Mw = (ww[:, None] * np.power(tw[:, None], np.arange(2 * M - 1)[None, :])).sum(axis=0)
    return IU, IV, Mw, M


def _rhs_fk_erdelyi(pt, s):
    v = pt.flat()
    IU, IV, Mw, M = fk_erdelyi_inner_tables(pt, s)
    m = np.arange(M, dtype=np.float64)
    c1 = pochhammer_table(v["alpha2"] - v["eta2"], M - 1) / sps.gamma(m + 1.0)
    c2 = pochhammer_table(v["eta2"], M - 1) / sps.gamma(m + 1.0)
    idx = np.add.outer(np.arange(M), np.arange(M))
    smat = Mw[idx] * np.power(v["z"], np.add.outer(m, m))
    return complex(np.einsum("m,n,mn,mn,mn->", c1, c2, IU, IV, smat))


# ---------------------------------------------------------------------------
# F2 identities
# ---------------------------------------------------------------------------


def _sample_f2_curious(rng) -> ParameterPoint:
    d1, c1 = _gap_pair(rng)
    b2, c2 = _gap_pair(rng)
    y, z = _yz_args(rng)
    return ParameterPoint(
        values={
            "a1": _u(rng, 0.1, 2.2), "a2": _u(rng, 0.1, 2.0), "b1": _u(rng, 0.1, 2.2),
            "b2": b2, "c1": c1, "c2": c2, "d1": d1,
        },
        arguments={"y": y, "z": z},
    )


def _lhs_f2_curious(pt, s):
    v = pt.flat()
    return complex(appell_f2(v["a1"], v["b1"], v["b2"], v["c1"], v["c2"], v["y"], v["z"], s.series_tol).value)


def _rhs_f2_curious(pt, s):
    v = pt.flat()
    y, z = v["y"], v["z"]
    tv, wv = measure_rule(DirichletMeasure(v["c1"] - v["d1"], v["d1"]), s.quad_order)
    tw, ww = measure_rule(DirichletMeasure(v["b2"], v["c2"] - v["b2"]), s.quad_order)
    V = tv[:, None]
    W = tw[None, :]
    Q = 1.0 - V * y - W * z
    g1, *_ = _eval_2f1(v["a1"] - v["a2"], v["c1"] - v["b1"] - v["d1"], v["c1"] - v["d1"],
                       V * y / (V * y + W * z - 1.0), s.series_tol)
    g2, *_ = _eval_2f1(v["a2"], v["b1"] + v["d1"] - v["c1"], v["d1"], (1.0 - V) * y / Q, s.series_tol)
    return complex(np.einsum("v,w,vw->", wv, ww, np.power(Q, -v["a1"]) * g1 * g2))


def _sample_f2_reduction(rng) -> ParameterPoint:
    y, z = _yz_args(rng)
    return ParameterPoint(
        values={
            "a": _u(rng, 0.1, 2.2), "b": _u(rng, 0.1, 2.2), "bp": _u(rng, 0.1, 2.2),
            "c": _u(rng, 0.5, 2.5),
        },
        arguments={"y": y, "z": z},
    )


def _lhs_f2_reduction(pt, s):
    v = pt.flat()
    return complex(appell_f2(v["a"], v["b"], v["bp"], v["c"], v["bp"], v["y"], v["z"], s.series_tol).value)


def _rhs_f2_reduction(pt, s):
    # Combined transform: the b'-degenerate F2 collapses to a single 2F1 in
    # the Pfaff-rotated variable y/(y+z-1).
    v = pt.flat()
    y, z = v["y"], v["z"]
    f = gauss_2f1(v["a"], v["c"] - v["b"], v["c"], y / (y + z - 1.0), s.series_tol)
    return complex((1.0 - y - z) ** (-v["a"]) * complex(f.value))


def _sample_manocha(rng) -> ParameterPoint:
    lam, d = _gap_pair(rng)
    eta, e = _gap_pair(rng)
    y, z = _yz_args(rng)
    return ParameterPoint(
        values={
            "a": _u(rng, 0.1, 2.2), "b": _u(rng, 0.1, 2.2), "c": _u(rng, 0.1, 2.2),
            "d": d, "e": e, "ap": _u(rng, 0.1, 1.5), "lam": lam, "eta": eta,
        },
        arguments={"y": y, "z": z},
    )


def _lhs_manocha(pt, s):
    v = pt.flat()
    return complex(appell_f2(v["a"], v["b"], v["c"], v["d"], v["e"], v["y"], v["z"], s.series_tol).value)


def _rhs_manocha(pt, s):
    v = pt.flat()
    y, z = v["y"], v["z"]
    tv, wv = measure_rule(DirichletMeasure(v["lam"], v["d"] - v["lam"]), s.quad_order)
    tw, ww = measure_rule(DirichletMeasure(v["eta"], v["e"] - v["eta"]), s.quad_order)
    V = tv[:, None]
    W = tw[None, :]
    Q = 1.0 - V * y - W * z
    MA = _series_len(abs(y) + abs(z), s.series_tol, lo=24, hi=160)
    ma = np.arange(MA + 1, dtype=np.float64)
    ca = f2_coeff_table(v["a"] - v["ap"], v["b"], v["c"], v["lam"], v["eta"], MA, MA)
    pv = np.power((tv * y)[:, None], ma[None, :])
    pw = np.power((tw * z)[:, None], ma[None, :])
    f2a = np.einsum("vm,mn,wn->vw", pv, ca, pw)
    cb = f2_coeff_table(v["ap"], v["b"] - v["lam"], v["c"] - v["eta"],
                        v["d"] - v["lam"], v["e"] - v["eta"], MA, MA)
    rvp = np.power(((1.0 - V) * y / Q)[:, :, None], ma[None, None, :])
    rwp = np.power(((1.0 - W) * z / Q)[:, :, None], ma[None, None, :])
    f2b = np.einsum("vwm,mn,vwn->vw", rvp, cb, rwp)
    return complex(np.einsum("v,w,vw->", wv, ww, np.power(Q, -v["ap"]) * f2a * f2b))


def _sample_manocha_reduced(rng) -> ParameterPoint:
    lam, d = _gap_pair(rng)
    c, e = _gap_pair(rng)
    y, z = _yz_args(rng)
    return ParameterPoint(
        values={
            "a": _u(rng, 0.1, 2.2), "b": _u(rng, 0.1, 2.2), "c": c, "d": d, "e": e,
            "ap": _u(rng, 0.1, 1.5), "lam": lam,
        },
        arguments={"y": y, "z": z},
    )


def _rhs_manocha_reduced(pt, s):
    v = pt.flat()
    y, z = v["y"], v["z"]
    tv, wv = measure_rule(DirichletMeasure(v["lam"], v["d"] - v["lam"]), s.quad_order)
    tw, ww = measure_rule(DirichletMeasure(v["c"], v["e"] - v["c"]), s.quad_order)
    V = tv[:, None]
    W = tw[None, :]
    Q = 1.0 - V * y - W * z
    g1, *_ = _eval_2f1(v["a"] - v["ap"], v["lam"] - v["b"], v["lam"],
                       V * y / (V * y + W * z - 1.0), s.series_tol)
    g2, *_ = _eval_2f1(v["ap"], v["b"] - v["lam"], v["d"] - v["lam"], (1.0 - V) * y / Q, s.series_tol)
    return complex(np.einsum("v,w,vw->", wv, ww, np.power(Q, -v["a"]) * g1 * g2))


# ---------------------------------------------------------------------------
# Convolution-family extension
# ---------------------------------------------------------------------------

FA_MODES = ("delta", "geometric", "fk-diagonal")


def fa_sequences(mode: str, v: dict):
    if mode == "delta":
        return delta_sequence(), delta_sequence()
    if mode == "geometric":
        return geometric_sequence(0.3), geometric_sequence(0.25)
    if mode == "fk-diagonal":
        return fk_diagonal_sequence(v["seq_a"], v["seq_b"], v["seq_g"]), delta_sequence()
    raise ValueError(mode)


def _sample_fa_erdelyi(rng) -> ParameterPoint:
    g = [_u(rng, 0.4, 1.0) for _ in range(4)]
    tau = [gi + _u(rng, 0.4, 1.2) for gi in g]
    mode = float(rng.integers(0, 3))
    x1, x2 = _u(rng, 0.1, 0.4), _u(rng, 0.1, 0.4)
    x3, x4 = _u(rng, 0.05, 0.28), _u(rng, 0.05, 0.28)
    return ParameterPoint(
        values={
            "alpha1": _u(rng, 0.2, 1.2), "alpha2": _u(rng, 0.2, 1.2),
            "beta1": _u(rng, 0.2, 1.2), "beta2": _u(rng, 0.2, 1.2),
            "lam1": _u(rng, 0.2, 1.0), "lam2": _u(rng, 0.2, 1.0),
            "g1": g[0], "g2": g[1], "g3": g[2], "g4": g[3],
            "tau1": tau[0], "tau2": tau[1], "tau3": tau[2], "tau4": tau[3],
            "mode": mode,
            "seq_a": _u(rng, 0.3, 1.0), "seq_b": _u(rng, 0.3, 1.0), "seq_g": _u(rng, 0.8, 1.8),
        },
        arguments={"x1": x1, "x2": x2, "x3": x3, "x4": x4},
    )


_FA_CONSTRAINTS = tuple(
    _pos(f"Re(tau{j}) > Re(g{j})", lambda v, j=j: v[f"tau{j}"] - v[f"g{j}"]) for j in range(1, 5)
) + tuple(
    _pos(f"Re(g{j}) > 0", lambda v, j=j: v[f"g{j}"]) for j in range(1, 5)
)


def _fa_combined_sequence(v: dict):
    mode = FA_MODES[int(v["mode"])]
    a, b = fa_sequences(mode, v)
    conv = convolve2d(a, b)
    nrt = 640
    r3 = _ratio_table(v["g3"], v["tau3"], nrt)
    r4 = _ratio_table(v["g4"], v["tau4"], nrt)
    return a, b, CoeffSequence2D(
        lambda m, n: r3[m] * r4[n] * conv(m, n),
        conv.decay_bound,
        table_builder=lambda M, N: np.outer(r3[: M + 1], r4[: N + 1]) * conv.table(M, N),
    )


def _lhs_fa_erdelyi(pt, s):
    v = pt.flat()
    *_, cseq = _fa_combined_sequence(v)
    res = generic_f_a(
        cseq,
        v["alpha1"] + v["lam1"], v["beta1"], v["tau1"],
        v["alpha2"] + v["lam2"], v["beta2"], v["tau2"],
        v["x1"], v["x2"], v["x3"], v["x4"],
        s.series_tol,
    )
    return complex(res.value)


def _rhs_fa_erdelyi(pt, s):
    v = pt.flat()
    aseq, bseq, _ = _fa_combined_sequence(v)
    x1, x2, x3, x4 = (v[k] for k in ("x1", "x2", "x3", "x4"))
    order = s.quad_order_quad
    rules = [
        measure_rule(DirichletMeasure(v[f"g{j}"], v[f"tau{j}"] - v[f"g{j}"]), order)
        for j in range(1, 5)
    ]
    (t1, w1), (t2, w2), (t3, w3), (t4, w4) = rules
    ratio = max(
        aseq.decay_bound * abs(x3) / (1 - abs(x1)),
        aseq.decay_bound * abs(x4) / (1 - abs(x2)),
        0.3,
    )
    MM = _series_len(ratio, s.series_tol, lo=16, hi=64)
    m = np.arange(MM, dtype=np.float64)

    f1a, *_ = _eval_2f1(v["alpha1"] + m[None, :], v["beta1"], v["g1"], (t1 * x1)[:, None], s.series_tol)
    xi1 = ((1.0 - t1) * x1 / (1.0 - t1 * x1))[:, None]
    f1b, *_ = _eval_2f1(v["lam1"] + m[None, :], v["beta1"] - v["g1"], v["tau1"] - v["g1"], xi1, s.series_tol)
    f1b = f1b * np.power((1.0 - t1 * x1)[:, None], -(v["lam1"] + m[None, :]))
    SU1 = np.einsum("u,um,un->mn", w1, f1a, f1b)

    f2a, *_ = _eval_2f1(v["alpha2"] + m[None, :], v["beta2"], v["g2"], (t2 * x2)[:, None], s.series_tol)
    xi2 = ((1.0 - t2) * x2 / (1.0 - t2 * x2))[:, None]
    f2b, *_ = _eval_2f1(v["lam2"] + m[None, :], v["beta2"] - v["g2"], v["tau2"] - v["g2"], xi2, s.series_tol)
    f2b = f2b * np.power((1.0 - t2 * x2)[:, None], -(v["lam2"] + m[None, :]))
    SU2 = np.einsum("u,um,un->mn", w2, f2a, f2b)

    span = np.arange(2 * MM - 1)
    SU3 = (w3[:, None] * np.power((t3 * x3)[:, None], span[None, :])).sum(axis=0)
    SU4 = (w4[:, None] * np.power((t4 * x4)[:, None], span[None, :])).sum(axis=0)
    idx = np.add.outer(np.arange(MM), np.arange(MM))
    return complex(
        np.einsum(
            "mn,MN,mM,nN->",
            aseq.table(MM - 1, MM - 1),
            bseq.table(MM - 1, MM - 1),
            SU1 * SU3[idx],
            SU2 * SU4[idx],
        )
    )


# ---------------------------------------------------------------------------
# Cross-form consistency of the two F_K evaluations
# ---------------------------------------------------------------------------


def _sample_fk_cross(rng) -> ParameterPoint:
    x, y, z = _fk_args(rng)
    return ParameterPoint(
        values={
            "alpha1": _u(rng, 0.1, 2.5), "alpha2": _u(rng, 0.1, 2.5),
            "beta1": _u(rng, 0.1, 2.5), "beta2": _u(rng, 0.1, 2.5),
            "gamma1": _u(rng, 0.5, 2.5), "gamma2": _u(rng, 0.5, 2.5),
            "gamma3": _u(rng, 0.5, 2.5),
        },
        arguments={"x": x, "y": y, "z": z},
    )


def _fk_params(v) -> FkParams:
    return FkParams(
        alpha1=v["alpha1"], alpha2=v["alpha2"], beta1=v["beta1"], beta2=v["beta2"],
        gamma1=v["gamma1"], gamma2=v["gamma2"], gamma3=v["gamma3"],
    )


def _lhs_fk_cross(pt, s):
    v = pt.flat()
    return complex(saran_fk_triple(_fk_params(v), v["x"], v["y"], v["z"], s.series_tol).value)


def _rhs_fk_cross(pt, s):
    v = pt.flat()
    return complex(saran_fk_reexpand(_fk_params(v), v["x"], v["y"], v["z"], s.series_tol).value)


# ---------------------------------------------------------------------------
# Registry assembly
# ---------------------------------------------------------------------------


def build() -> tuple[IdentityCase, ...]:
    return (
        IdentityCase(
            id="euler-1", anchor="Eq. (1.2)",
            constraints=(_pos("Re(gamma) > Re(beta)", lambda v: v["gamma"] - v["beta"]),
                         _pos("Re(beta) > 0", lambda v: v["beta"])),
            sampler=_sample_euler, lhs=_lhs_2f1, rhs=_rhs_euler1,
            tol=1e-9, cost_class="single-integral", default_samples=50,
        ),
        IdentityCase(
            id="euler-2", anchor="Eq. (1.3)",
            constraints=(_pos("Re(gamma) > Re(alpha)", lambda v: v["gamma"] - v["alpha"]),
                         _pos("Re(alpha) > 0", lambda v: v["alpha"])),
            sampler=_sample_euler2, lhs=_lhs_2f1, rhs=_rhs_euler2,
            tol=1e-9, cost_class="single-integral", default_samples=50,
        ),
        IdentityCase(
            id="bateman", anchor="Eq. (1.5)",
            constraints=(_pos("Re(gamma) > Re(lam)", lambda v: v["gamma"] - v["lam"]),
                         _pos("Re(lam) > 0", lambda v: v["lam"])),
            sampler=_sample_bateman, lhs=_lhs_2f1, rhs=_rhs_bateman,
            tol=1e-9, cost_class="single-integral", default_samples=50,
        ),
        IdentityCase(
            id="erdelyi-1", anchor="Eq. (1.6)",
            constraints=(_pos("Re(gamma) > Re(lam)", lambda v: v["gamma"] - v["lam"]),
                         _pos("Re(lam) > 0", lambda v: v["lam"])),
            sampler=_sample_erdelyi1, lhs=_lhs_2f1, rhs=_rhs_erdelyi1,
            tol=1e-9, cost_class="single-integral", default_samples=50,
        ),
        IdentityCase(
            id="erdelyi-2", anchor="Eq. (1.7)",
            constraints=(_pos("Re(gamma) > Re(eta)", lambda v: v["gamma"] - v["eta"]),
                         _pos("Re(eta) > 0", lambda v: v["eta"])),
            sampler=_sample_erdelyi2, lhs=_lhs_2f1, rhs=_rhs_erdelyi2,
            tol=1e-9, cost_class="single-integral", default_samples=50,
        ),
        IdentityCase(
            id="erdelyi-3", anchor="Eq. (1.8)",
            constraints=_ERDELYI3_CONSTRAINTS,
            sampler=_sample_erdelyi3, lhs=_lhs_2f1, rhs=_rhs_erdelyi3,
            tol=1e-9, cost_class="single-integral", default_samples=50,
        ),
        IdentityCase(
            id="fk-erdelyi", anchor="Theorem 1.1",
            constraints=_FK_ERDELYI_CONSTRAINTS,
            sampler=_sample_fk_erdelyi, lhs=_lhs_fk_erdelyi, rhs=_rhs_fk_erdelyi,
            tol=1e-6, cost_class="triple-integral", default_samples=10,
        ),
        IdentityCase(
            id="f2-curious", anchor="Theorem 3.2",
            constraints=(
                _pos("Re(c1) > Re(d1)", lambda v: v["c1"] - v["d1"]),
                _pos("Re(d1) > 0", lambda v: v["d1"]),
                _pos("Re(c2) > Re(b2)", lambda v: v["c2"] - v["b2"]),
                _pos("Re(b2) > 0", lambda v: v["b2"]),
                Constraint("|y|+|z| < 1", lambda pt: abs(pt.arguments["y"]) + abs(pt.arguments["z"]) < 1),
            ),
            sampler=_sample_f2_curious, lhs=_lhs_f2_curious, rhs=_rhs_f2_curious,
            tol=1e-8, cost_class="single-integral", default_samples=20,
        ),
        IdentityCase(
            id="f2-reduction-proof", anchor="Eqs. (3.7)+Pfaff",
            constraints=(Constraint("|y|+|z| < 1", lambda pt: abs(pt.arguments["y"]) + abs(pt.arguments["z"]) < 1),),
            sampler=_sample_f2_reduction, lhs=_lhs_f2_reduction, rhs=_rhs_f2_reduction,
            tol=1e-10, cost_class="cheap", default_samples=25,
        ),
        IdentityCase(
            id="manocha", anchor="Eq. (3.10)",
            constraints=(
                _pos("Re(d) > Re(lam)", lambda v: v["d"] - v["lam"]),
                _pos("Re(lam) > 0", lambda v: v["lam"]),
                _pos("Re(e) > Re(eta)", lambda v: v["e"] - v["eta"]),
                _pos("Re(eta) > 0", lambda v: v["eta"]),
            ),
            sampler=_sample_manocha, lhs=_lhs_manocha, rhs=_rhs_manocha,
            tol=1e-8, cost_class="single-integral", default_samples=20,
        ),
        IdentityCase(
            id="manocha-reduced", anchor="Eq. (3.11)",
            constraints=(
                _pos("Re(d) > Re(lam)", lambda v: v["d"] - v["lam"]),
                _pos("Re(lam) > 0", lambda v: v["lam"]),
                _pos("Re(e) > Re(c)", lambda v: v["e"] - v["c"]),
                _pos("Re(c) > 0", lambda v: v["c"]),
            ),
            sampler=_sample_manocha_reduced, lhs=_lhs_manocha, rhs=_rhs_manocha_reduced,
            tol=1e-8, cost_class="single-integral", default_samples=20,
        ),
        IdentityCase(
            id="fa-erdelyi", anchor="Theorem 3.3",
            constraints=_FA_CONSTRAINTS,
            sampler=_sample_fa_erdelyi, lhs=_lhs_fa_erdelyi, rhs=_rhs_fa_erdelyi,
            tol=1e-8, cost_class="triple-integral", default_samples=20,
        ),
        IdentityCase(
            id="fk-cross-form", anchor="Eqs. (1.12)/(1.13)",
            constraints=(Constraint("(x,y,z) in F_K domain", lambda pt: in_domain_fk(*(pt.arguments[k] for k in "xyz"))),),
            sampler=_sample_fk_cross, lhs=_lhs_fk_cross, rhs=_rhs_fk_cross,
            tol=1e-10, cost_class="cheap", default_samples=25,
        ),
    )
