"""Weight densities on [0,1] and the Gauss-Jacobi machinery that integrates
against them.

Two measure families appear in the classical integral identities: the
Dirichlet (beta) measure with density

    m_{a,b}(t) = Gamma(a+b)/(Gamma(a)Gamma(b)) t^(a-1) (1-t)^(b-1)

and the hypergeometric measure, a Dirichlet-type weight carrying an extra
2F1(alpha, beta; gamma; 1-t) factor.  Both are normalized to total mass one.

Integration strategy: every measure is reduced to a flat list of nodes and
effective weights ("measure rule") so that integral(f d mu) = sum(w_i f(t_i)).
For the Dirichlet measure this is one Jacobi rule with the density constant
folded in.  The hypergeometric density behaves like t^(eta-1) times a mix of
a constant and a t^(gamma-alpha-beta) branch as t -> 0, which a single Jacobi
rule resolves only at an algebraic rate; instead the interval is split at 1/2
and the 2F1 factor is expanded through its z -> 1-z connection formula on the
left half, giving three endpoint-matched Jacobi pieces whose remainders are
analytic.  Each piece then converges spectrally.
"""

from __future__ import annotations

from dataclasses import dataclass
from threading import Lock
from typing import Callable, Sequence

import numpy as np
import scipy.special as sp

from .errors import DomainError
from .series import _series_2f1_raw

__all__ = [
    "DirichletMeasure",
    "HypergeometricMeasure",
    "QuadratureRule",
    "dirichlet_density",
    "hypergeometric_density",
    "gauss_jacobi_rule",
    "measure_rule",
    "integrate_measure",
    "integrate_product",
]


@dataclass(frozen=True)
class DirichletMeasure:
    """Normalized beta weight t^(alpha-1) (1-t)^(beta-1) on [0,1]."""

    alpha: complex
    beta: complex

    def __post_init__(self):
        if min(complex(self.alpha).real, complex(self.beta).real) <= 0:
            raise DomainError("Dirichlet measure needs min(Re a, Re b) > 0")


@dataclass(frozen=True)
class HypergeometricMeasure:
    """Weight t^(eta-1) (1-t)^(gamma-1) 2F1(alpha, beta; gamma; 1-t), normalized."""

    alpha: complex
    beta: complex
    gamma: complex
    eta: complex

    def __post_init__(self):
        a, b, g, e = (complex(v) for v in (self.alpha, self.beta, self.gamma, self.eta))
        if min(e.real, g.real, (e + g - a - b).real) <= 0:
            raise DomainError(
                "hypergeometric measure needs min(Re eta, Re gamma, Re(eta+gamma-alpha-beta)) > 0"
            )


MeasureSpec = DirichletMeasure | HypergeometricMeasure


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes/weights on (0,1) exact for degree <= 2n-1 against t^a (1-t)^b."""

    nodes: np.ndarray
    weights: np.ndarray
    exponents: tuple[float, float]


_RULE_CACHE: dict[tuple[float, float, int], QuadratureRule] = {}
_RULE_LOCK = Lock()


def gauss_jacobi_rule(a_exp: float, b_exp: float, n: int) -> QuadratureRule:
    """Gauss-Jacobi rule for integral(t^a (1-t)^b f(t), t=0..1).

    Cached per (a, b, n); the cache is shared process-wide and lock-guarded.
    """
    if a_exp <= -1 or b_exp <= -1:
        raise DomainError("Jacobi exponents must exceed -1")
    if not (0 < n <= 256):
        raise DomainError("rule size must lie in 1..256")
    key = (float(a_exp), float(b_exp), int(n))
    with _RULE_LOCK:
        hit = _RULE_CACHE.get(key)
    if hit is not None:
        return hit
    # scipy's rule lives on [-1,1] with weight (1-x)^alpha (1+x)^beta; the
    # affine map x = 2t-1 sends it to t^beta (1-t)^alpha on [0,1].
    x, w = sp.roots_jacobi(n, b_exp, a_exp)
    nodes = (x + 1.0) / 2.0
    weights = w / 2.0 ** (a_exp + b_exp + 1.0)
    rule = QuadratureRule(nodes, weights, (float(a_exp), float(b_exp)))
    with _RULE_LOCK:
        _RULE_CACHE[key] = rule
    return rule


def dirichlet_density(spec: DirichletMeasure, t):
    """Pointwise Dirichlet density; t must lie strictly inside (0,1)."""
    t = np.asarray(t, dtype=np.float64)
    if np.any(t <= 0.0) or np.any(t >= 1.0):
        raise DomainError("density defined on the open interval (0,1)")
    a, b = complex(spec.alpha), complex(spec.beta)
    const = np.exp(sp.loggamma(a + b) - sp.loggamma(a) - sp.loggamma(b))
    out = const * np.power(t, a - 1.0) * np.power(1.0 - t, b - 1.0)
    if a.imag == 0.0 and b.imag == 0.0:
        out = out.real
    return out if out.ndim else out[()]


LOG_ENDPOINT_MARGIN = 0.05


def _hyp_connection_coeffs(a, b, g):
    """Coefficients (A, B) of 2F1(a,b;g;1-t) = A F1(t) + B t^(g-a-b) F2(t)."""
    cab = g - a - b
    if abs(cab - round(cab.real)) < 1e-6 and abs(cab.imag) < 1e-12:
        raise DomainError(
            "gamma - alpha - beta too close to an integer for the endpoint expansion"
        )
    # rgamma sends the denominator poles (upper parameter in Z_{<=0}) to a
    # clean zero coefficient instead of a NaN.
    A = np.exp(sp.loggamma(g) + sp.loggamma(cab)) * sp.rgamma(g - a) * sp.rgamma(g - b)
    B = np.exp(sp.loggamma(g) + sp.loggamma(-cab)) * sp.rgamma(a) * sp.rgamma(b)
    return complex(A), complex(B)


def hypergeometric_density(spec: HypergeometricMeasure, t, tol: float = 1e-13):
    """Pointwise hypergeometric-measure density.

    Rejects parameter sets with Re(gamma - alpha - beta) <= 0.05: there the
    2F1 factor develops a (near-)logarithmic endpoint at t = 0 that the
    quadrature pipeline is not meant to chase.
    """
    t = np.asarray(t, dtype=np.float64)
    if np.any(t <= 0.0) or np.any(t >= 1.0):
        raise DomainError("density defined on the open interval (0,1)")
    a, b, g, e = (complex(v) for v in (spec.alpha, spec.beta, spec.gamma, spec.eta))
    if (g - a - b).real <= LOG_ENDPOINT_MARGIN:
        raise DomainError(
            "hypergeometric density needs Re(gamma-alpha-beta) > 0.05 away from t=0"
        )
    const = np.exp(
        sp.loggamma(e + g - a)
        + sp.loggamma(e + g - b)
        - sp.loggamma(e)
        - sp.loggamma(g)
        - sp.loggamma(e + g - a - b)
    )
    w = 1.0 - t
    small = t <= 0.5
    f = np.empty(t.shape if t.ndim else (1,), dtype=np.complex128)
    tt = np.atleast_1d(t)
    ww = np.atleast_1d(w)
    sm = np.atleast_1d(small)
    if np.any(sm):
        A, B = _hyp_connection_coeffs(a, b, g)
        cab = g - a - b
        s1, *_ = _series_2f1_raw(a, b, a + b - g + 1.0, tt[sm], tol, 100_000)
        s2, *_ = _series_2f1_raw(g - a, g - b, cab + 1.0, tt[sm], tol, 100_000)
        f[sm] = A * s1 + B * np.power(tt[sm].astype(np.complex128), cab) * s2
    if np.any(~sm):
        s0, *_ = _series_2f1_raw(a, b, g, ww[~sm], tol, 100_000)
        f[~sm] = s0
    out = const * np.power(tt, e - 1.0) * np.power(ww, g - 1.0) * f
    if all(v.imag == 0.0 for v in (a, b, g, e)):
        out = out.real
    return out if t.ndim else out[0]


def _dirichlet_rule(spec: DirichletMeasure, order: int):
    a, b = complex(spec.alpha), complex(spec.beta)
    rule = gauss_jacobi_rule(a.real - 1.0, b.real - 1.0, order)
    t = rule.nodes
    const = np.exp(sp.loggamma(a + b) - sp.loggamma(a) - sp.loggamma(b))
    w = rule.weights * const
    if a.imag != 0.0 or b.imag != 0.0:
        w = w * np.power(t, 1j * a.imag) * np.power(1.0 - t, 1j * b.imag)
    else:
        w = np.asarray(w.real if np.iscomplexobj(w) else w, dtype=np.float64)
    return t, w


def _hypergeometric_rule(spec: HypergeometricMeasure, order: int, tol: float = 1e-14):
    a, b, g, e = (complex(v) for v in (spec.alpha, spec.beta, spec.gamma, spec.eta))
    if (g - a - b).real <= LOG_ENDPOINT_MARGIN:
        raise DomainError(
            "hypergeometric density needs Re(gamma-alpha-beta) > 0.05 away from t=0"
        )
    const = np.exp(
        sp.loggamma(e + g - a)
        + sp.loggamma(e + g - b)
        - sp.loggamma(e)
        - sp.loggamma(g)
        - sp.loggamma(e + g - a - b)
    )
    A, B = _hyp_connection_coeffs(a, b, g)
    cab = g - a - b
    real_params = all(v.imag == 0.0 for v in (a, b, g, e))

    nodes, weights = [], []

    # Right half [1/2, 1]: substitute 1-t = s/2; the (1-t)^(gamma-1) endpoint
    # goes into the rule, the 2F1 factor is an analytic series in s/2.
    r = gauss_jacobi_rule(g.real - 1.0, 0.0, order)
    s = r.nodes
    t_right = 1.0 - s / 2.0
    f0, *_ = _series_2f1_raw(a, b, g, s / 2.0, tol, 100_000)
    w_right = (
        r.weights
        * 2.0 ** (-g.real)
        * const
        * np.power(t_right, e - 1.0)
        * f0
    )
    if g.imag != 0.0:
        w_right = w_right * np.power(s / 2.0, 1j * g.imag)
    nodes.append(t_right)
    weights.append(w_right)

    # Left half [0, 1/2], analytic branch of the connection formula:
    # substitute t = s/2 with the t^(eta-1) endpoint in the rule.
    r1 = gauss_jacobi_rule(e.real - 1.0, 0.0, order)
    s = r1.nodes
    t_left = s / 2.0
    f1, *_ = _series_2f1_raw(a, b, a + b - g + 1.0, t_left, tol, 100_000)
    w1 = (
        r1.weights
        * 2.0 ** (-e.real)
        * const
        * A
        * np.power(1.0 - t_left, g - 1.0)
        * f1
    )
    if e.imag != 0.0:
        w1 = w1 * np.power(t_left, 1j * e.imag)
    nodes.append(t_left)
    weights.append(w1)

    # Left half, t^(gamma-alpha-beta) branch: the fractional power joins the
    # rule exponent, keeping the remainder analytic.
    exp2 = (e + cab).real - 1.0
    r2 = gauss_jacobi_rule(exp2, 0.0, order)
    s = r2.nodes
    t_frac = s / 2.0
    f2, *_ = _series_2f1_raw(g - a, g - b, cab + 1.0, t_frac, tol, 100_000)
    w2 = (
        r2.weights
        * 2.0 ** (-(e + cab).real)
        * const
        * B
        * np.power(1.0 - t_frac, g - 1.0)
        * f2
    )
    if (e + cab).imag != 0.0:
        w2 = w2 * np.power(t_frac, 1j * (e + cab).imag)
    nodes.append(t_frac)
    weights.append(w2)

    t = np.concatenate(nodes)
    w = np.concatenate(weights)
    if real_params and np.iscomplexobj(w):
        w = w.real
    return t, w


def measure_rule(spec: MeasureSpec, order: int):
    """Nodes and effective weights with the full density absorbed, so that
    integral(f d mu) is approximated by weights @ f(nodes)."""
    if isinstance(spec, DirichletMeasure):
        return _dirichlet_rule(spec, order)
    if isinstance(spec, HypergeometricMeasure):
        return _hypergeometric_rule(spec, order)
    raise TypeError(f"not a measure spec: {spec!r}")


def _apply(f: Callable, t: np.ndarray) -> np.ndarray:
    """Evaluate an integrand, vectorized when possible."""
    try:
        vals = np.asarray(f(t))
        if vals.shape == t.shape:
            return vals
    except Exception:
        pass
    return np.asarray([f(ti) for ti in t])


def integrate_measure(f: Callable, spec: MeasureSpec, order: int = 64):
    """integral(f(t) d mu(t), t=0..1) by the effective measure rule."""
    t, w = measure_rule(spec, order)
    vals = _apply(f, t)
    out = complex(np.sum(w * vals))
    return out.real if out.imag == 0.0 else out


def integrate_product(f: Callable, specs: Sequence[MeasureSpec], order: int = 32):
    """Tensor-product integral of f(t1, ..., tk) against k measures, k <= 4.

    f receives open-mesh arrays (shapes (n1,1,..), (1,n2,..), ...) and must
    broadcast; non-vectorized integrands can be wrapped with np.vectorize.
    """
    if len(specs) > 4:
        raise DomainError("product integration supports at most 4 axes")
    rules = [measure_rule(s, order) for s in specs]
    k = len(rules)
    grids = []
    for i, (t, _) in enumerate(rules):
        shape = [1] * k
        shape[i] = t.size
        grids.append(t.reshape(shape))
    vals = np.asarray(f(*grids))
    wgrid = rules[0][1].reshape([-1] + [1] * (k - 1))
    for i, (_, w) in enumerate(rules[1:], start=1):
        shape = [1] * k
        shape[i] = w.size
        wgrid = wgrid * w.reshape(shape)
    out = complex(np.sum(wgrid * vals))
    return out.real if out.imag == 0.0 else out
