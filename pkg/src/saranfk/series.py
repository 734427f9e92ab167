"""Classical hypergeometric series engines.

Covers Gauss 2F1 (with Pfaff and argument-near-one routes), generalized pFq,
Appell F2, Saran's three-variable F_K in both its triple-series and
2F1-reexpanded forms, the L-variable extension of F_K, and the convolution
family built from shifted 2F1 products.

All engines share the same truncation discipline: stop once three consecutive
terms (or index shells) each contribute less than tol * (1 + |partial sum|)
scaled by a conservative geometric ratio, with a minimum of eight terms per
index.  SeriesResult.est_trunc_error is reported relative to (1 + |value|),
matching that stopping rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from threading import Lock
from typing import Callable

import numpy as np
import scipy.special as sp

from .core import is_nonpositive_integer, pochhammer_table
from .errors import DomainError, PoleError

__all__ = [
    "SeriesResult",
    "FkParams",
    "CoeffSequence2D",
    "gauss_2f1",
    "hyper_pfq",
    "appell_f2",
    "in_domain_fk",
    "saran_fk_triple",
    "saran_fk_reexpand",
    "fk_L",
    "generic_f_a",
    "convolve2d",
    "delta_sequence",
    "geometric_sequence",
    "fk_diagonal_sequence",
]


@dataclass(frozen=True)
class SeriesResult:
    """Value of a truncated series plus how it was obtained.

    est_trunc_error is relative to (1 + |value|); converged=True implies it
    does not exceed the tolerance the evaluation was asked for.
    """

    value: complex
    terms_used: int
    converged: bool
    est_trunc_error: float

    def __complex__(self):
        return complex(self.value)


@dataclass(frozen=True)
class FkParams:
    """Parameter set (alpha1, alpha2, beta1, beta2, gamma1, gamma2, gamma3)
    for Saran's F_K.  The gammas must avoid the non-positive integers."""

    alpha1: complex
    alpha2: complex
    beta1: complex
    beta2: complex
    gamma1: complex
    gamma2: complex
    gamma3: complex

    def __post_init__(self):
        for name in ("gamma1", "gamma2", "gamma3"):
            if is_nonpositive_integer(getattr(self, name)):
                raise PoleError(f"F_K parameter {name} is a non-positive integer")


def _as_value(x):
    x = complex(x)
    return x.real if x.imag == 0.0 else x


def _snap_terminating(a):
    """Round an upper parameter onto Z_{<=0} when it is within pole tolerance,
    so terminating series cut off exactly."""
    if is_nonpositive_integer(a):
        return float(round(complex(a).real))
    return a


def _is_terminating(a) -> bool:
    return is_nonpositive_integer(a)


# ---------------------------------------------------------------------------
# Gauss 2F1
# ---------------------------------------------------------------------------


def _series_2f1_raw(a, b, c, z, tol, max_terms, min_terms=8):
    """Direct power series, broadcasting over all four inputs.

    Returns (value array, terms, converged, relative tail estimate).
    """
    arrs = [np.asarray(v) for v in (a, b, c, z)]
    shape = np.broadcast_shapes(*(v.shape for v in arrs))
    cplx = any(np.iscomplexobj(v) for v in arrs)
    dtype = np.complex128 if cplx else np.float64
    a, b, c, z = (np.broadcast_to(v, shape).astype(dtype) for v in arrs)

    term = np.ones(shape, dtype=dtype)
    total = np.ones(shape, dtype=dtype)
    rhat = min(0.97, float(np.max(np.abs(z))))
    margin = 1.0 - rhat
    small = 0
    n = 0
    tmax = 1.0
    while n < max_terms:
        term = term * ((a + n) * (b + n)) / ((c + n) * (n + 1.0)) * z
        total = total + term
        n += 1
        tmax = float(np.max(np.abs(term)))
        scale = 1.0 + float(np.max(np.abs(total)))
        if tmax <= tol * scale * margin:
            small += 1
            if small >= 3 and n >= min_terms:
                break
        else:
            small = 0
    scale = 1.0 + float(np.max(np.abs(total)))
    est = tmax * rhat / (1.0 - rhat) / scale + tmax / scale
    return total, n, small >= 3, est


def _connection_ok(a, b, c) -> bool:
    """The 1-z expansion needs c-a-b away from the integers and a, b off the
    pole lattice of the leading gamma factors."""
    cab = complex(c) - complex(a) - complex(b)
    if abs(cab.imag) < 1e-12 and abs(cab.real - round(cab.real)) < 1e-6:
        return False
    return True


def _series_2f1_near_one(a, b, c, z, tol, max_terms):
    """2F1 through the standard two-term expansion around z = 1."""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    c = np.asarray(c, dtype=np.complex128)
    z = np.asarray(z, dtype=np.complex128)
    cab = c - a - b
    w = 1.0 - z
    coef1 = np.exp(sp.loggamma(c) + sp.loggamma(cab)) * sp.rgamma(c - a) * sp.rgamma(c - b)
    coef2 = np.exp(sp.loggamma(c) + sp.loggamma(-cab)) * sp.rgamma(a) * sp.rgamma(b)
    s1, n1, ok1, e1 = _series_2f1_raw(a, b, a + b - c + 1.0, w, tol, max_terms)
    s2, n2, ok2, e2 = _series_2f1_raw(c - a, c - b, cab + 1.0, w, tol, max_terms)
    out = coef1 * s1 + coef2 * np.power(w, cab) * s2
    return out, n1 + n2, ok1 and ok2, e1 + e2


def _eval_2f1(a, b, c, z, tol, max_terms=250_000):
    """Route a 2F1 evaluation, broadcasting over array arguments.

    Returns (value, terms, converged, relative tail estimate).  Raises
    DomainError when no convergent route covers some argument.
    """
    if np.ndim(c) == 0 and is_nonpositive_integer(c):
        raise PoleError(f"2F1 lower parameter c={c} is a non-positive integer")
    a = _snap_terminating(a) if np.ndim(a) == 0 else a
    b = _snap_terminating(b) if np.ndim(b) == 0 else b

    zarr = np.asarray(z)
    az = np.abs(zarr)
    terminating = (np.ndim(a) == 0 and _is_terminating(a)) or (
        np.ndim(b) == 0 and _is_terminating(b)
    )
    if terminating:
        return _series_2f1_raw(a, b, c, z, tol, max_terms)
    if np.all(az <= 0.9):
        return _series_2f1_raw(a, b, c, z, tol, max_terms)

    # Mixed regimes: split the argument array by the transform that converges.
    with np.errstate(divide="ignore", invalid="ignore"):
        zp = zarr / (zarr - 1.0)
    azp = np.abs(zp)
    m_direct = az <= 0.9
    m_pfaff = ~m_direct & (azp <= 0.9)
    rest = ~m_direct & ~m_pfaff
    conn_allowed = (
        np.ndim(a) == 0 and np.ndim(b) == 0 and np.ndim(c) == 0 and _connection_ok(a, b, c)
    )
    # The 1-z expansion only serves points inside the unit disc; outside it
    # the function continues onto the branch cut and the contract is a
    # domain error instead.
    m_conn = rest & (np.abs(1.0 - zarr) <= 0.9) & (az < 1.0) if conn_allowed else np.zeros_like(rest)
    rest = rest & ~m_conn
    m_slow = rest & (az < 1.0)
    m_pfaff_slow = rest & ~m_slow & (azp < 1.0)
    if np.any(rest & ~m_slow & ~m_pfaff_slow):
        raise DomainError("2F1 argument outside |z|<1 and every transform range")

    shape = np.broadcast_shapes(np.shape(a), np.shape(b), np.shape(c), zarr.shape)
    cplx = any(np.iscomplexobj(np.asarray(v)) for v in (a, b, c, z))
    dtype = np.complex128 if cplx else np.float64
    ab, bb, cb, zb = (np.broadcast_to(np.asarray(v), shape) for v in (a, b, c, zarr))
    out = np.zeros(shape, dtype=dtype)
    terms = 0
    converged = True
    est = 0.0

    def do(mask, fn):
        nonlocal terms, converged, est, out
        if not np.any(mask):
            return
        vals, n, ok, e = fn(ab[mask], bb[mask], cb[mask], zb[mask])
        if np.iscomplexobj(vals) and not np.iscomplexobj(out):
            out = out.astype(np.complex128)
        out[mask] = vals
        terms += n
        converged = converged and ok
        est = max(est, e)

    do(m_direct, lambda A, B, C, Z: _series_2f1_raw(A, B, C, Z, tol, max_terms))

    def pfaff(A, B, C, Z):
        v, n, ok, e = _series_2f1_raw(A, C - B, C, Z / (Z - 1.0), tol, max_terms)
        base = 1.0 - Z
        if not np.iscomplexobj(base) and np.any(base <= 0):
            base = base.astype(np.complex128)
        pref = np.power(base, -A)
        return pref * v, n, ok, e

    do(m_pfaff, pfaff)
    do(m_conn, lambda A, B, C, Z: _series_2f1_near_one(A, B, C, Z, tol, max_terms))
    do(m_slow, lambda A, B, C, Z: _series_2f1_raw(A, B, C, Z, tol, max_terms))
    do(m_pfaff_slow, pfaff)

    if not cplx and np.iscomplexobj(out):
        # Real parameters and 0 < z < 1 give a real function; the imaginary
        # residue is rounding noise from the log-gamma prefactors.
        out = out.real
    if zarr.ndim == 0:
        return out[()], terms, converged, est
    return out, terms, converged, est


def gauss_2f1(a, b, c, z, tol: float = 1e-12) -> SeriesResult:
    """Gauss hypergeometric 2F1(a, b; c; z).

    Direct series for |z| <= 0.9; the Pfaff transform z -> z/(z-1) or the
    expansion around z = 1 otherwise.  Raises DomainError when |z| >= 1 and no
    transform applies, PoleError for c in Z_{<=0}.
    """
    value, terms, converged, est = _eval_2f1(a, b, c, complex(z), tol)
    return SeriesResult(_as_value(value), terms, converged, est)


# ---------------------------------------------------------------------------
# Generalized pFq
# ---------------------------------------------------------------------------


def hyper_pfq(upper, lower, z, tol: float = 1e-12, max_terms: int = 200_000) -> SeriesResult:
    """Generalized hypergeometric sum_n prod(upper)_n / prod(lower)_n z^n / n!.

    Entire for p <= q; requires |z| < 1 for p = q + 1 unless an upper
    parameter terminates the series.
    """
    upper = [_snap_terminating(u) for u in upper]
    for ell in lower:
        if is_nonpositive_integer(ell):
            raise PoleError(f"pFq lower parameter {ell} is a non-positive integer")
    z = complex(z)
    terminating = any(_is_terminating(u) for u in upper)
    if len(upper) > len(lower) + 1 and not terminating and z != 0:
        raise DomainError("pFq with p > q+1 diverges for z != 0")
    if len(upper) == len(lower) + 1 and abs(z) >= 1.0 and not terminating:
        raise DomainError("pFq with p = q+1 requires |z| < 1")

    term = complex(1.0)
    total = complex(1.0)
    rhat = min(0.97, abs(z)) if len(upper) == len(lower) + 1 else 0.5
    margin = 1.0 - rhat
    small = 0
    n = 0
    while n < max_terms:
        num = 1.0
        for u in upper:
            num *= complex(u) + n
        den = float(n + 1)
        for ell in lower:
            den *= complex(ell) + n
        term = term * num / den * z
        total += term
        n += 1
        if abs(term) <= tol * (1.0 + abs(total)) * margin:
            small += 1
            if small >= 3 and n >= 8:
                break
        else:
            small = 0
    scale = 1.0 + abs(total)
    est = (abs(term) * rhat / (1.0 - rhat) + abs(term)) / scale
    return SeriesResult(_as_value(total), n, small >= 3, est)


# ---------------------------------------------------------------------------
# Appell F2
# ---------------------------------------------------------------------------


def appell_f2(a, b1, b2, c1, c2, y, z, tol: float = 1e-12) -> SeriesResult:
    """Appell F2 double series on |y| + |z| < 1.

    Evaluated row by row: the inner n-sum collapses to 2F1(a+m, b2; c2; z),
    leaving a single geometric-rate outer sum in m.
    """
    for name, cval in (("c1", c1), ("c2", c2)):
        if is_nonpositive_integer(cval):
            raise PoleError(f"F2 parameter {name} is a non-positive integer")
    y = complex(y)
    z = complex(z)
    if abs(y) + abs(z) >= 1.0:
        raise DomainError(f"F2 requires |y|+|z| < 1, got {abs(y) + abs(z):.4f}")
    if y == 0 and z == 0:
        return SeriesResult(1.0, 1, True, 0.0)

    r = abs(y) / (1.0 - abs(z))
    if r == 0.0:
        inner = gauss_2f1(a, b2, c2, z, tol)
        return inner
    M = int(np.clip(math.ceil(math.log(max(tol, 1e-300)) / math.log(r)) + 16, 24, 800))

    terms = 0
    for _ in range(3):
        m = np.arange(M + 1, dtype=np.float64)
        # Row coefficients (a)_m (b1)_m y^m / ((c1)_m m!) by the term-ratio
        # recurrence; separate Pochhammer tables overflow at a few hundred m.
        step = (a + m[:-1]) * (b1 + m[:-1]) / ((c1 + m[:-1]) * (1.0 + m[:-1])) * y
        coef = np.ones(M + 1, dtype=step.dtype)
        np.cumprod(step, out=coef[1:])
        inner, n_in, ok, _ = _eval_2f1(np.asarray(a) + m, b2, c2, z, tol * 0.1)
        rows = coef * inner
        terms += n_in + M
        total = rows.sum()
        tail = np.abs(rows[-3:]).max()
        if tail <= tol * (1.0 + abs(total)) * (1.0 - r) and ok:
            est = (tail * r / (1.0 - r) + tail) / (1.0 + abs(total))
            return SeriesResult(_as_value(total), terms, True, est)
        M = int(M * 1.6) + 8
        if M > 2000:
            break
    est = (tail * r / (1.0 - r) + tail) / (1.0 + abs(total))
    return SeriesResult(_as_value(total), terms, False, est)


# ---------------------------------------------------------------------------
# Saran F_K
# ---------------------------------------------------------------------------


def in_domain_fk(x, y, z) -> bool:
    """Membership test for the F_K convergence region:
    |x| < 1, |y| < 1 and |z| < (1-|x|)(1-|y|) (all strict)."""
    ax, ay, az = abs(complex(x)), abs(complex(y)), abs(complex(z))
    return ax < 1.0 and ay < 1.0 and az < (1.0 - ax) * (1.0 - ay)


def _fk_domain_ratio(x, y, z) -> float:
    ax, ay, az = abs(complex(x)), abs(complex(y)), abs(complex(z))
    return max(ax, ay, az / ((1.0 - ax) * (1.0 - ay)))


def _shell_sums(tensor: np.ndarray, shell_index: np.ndarray, smax: int) -> np.ndarray:
    flat = tensor.ravel()
    idx = shell_index.ravel()
    if np.iscomplexobj(flat):
        re = np.bincount(idx, weights=flat.real, minlength=smax + 1)
        im = np.bincount(idx, weights=flat.imag, minlength=smax + 1)
        return re + 1j * im
    return np.bincount(idx, weights=flat, minlength=smax + 1)


def _shell_rate(shells: np.ndarray, s: int, fallback: float) -> float:
    """Observed geometric decay rate near shell s.

    The true rate can exceed the domain ratio (joint Pochhammer growth), so
    the stopping margin must come from the computed shells themselves."""
    rate = fallback
    for k in (s, s - 1, s - 2):
        if k >= 1 and shells[k - 1] != 0:
            rate = max(rate, abs(shells[k] / shells[k - 1]))
    return min(rate, 0.99)


def _sum_shells(shells: np.ndarray, tol: float, rho: float, min_shells: int = 8):
    """Accumulate shell contributions with the three-small-shells rule.

    Returns (value including a geometric tail correction, stopping shell or
    None, relative tail estimate)."""
    total = 0.0
    small = 0
    stop_at = None
    for s, sigma in enumerate(shells):
        total = total + sigma
        if s >= 3:
            margin = (1.0 - _shell_rate(shells, s, rho)) * 0.25
            if abs(sigma) <= tol * (1.0 + abs(total)) * margin:
                small += 1
                if small >= 3 and s >= min_shells:
                    stop_at = s
                    break
            else:
                small = 0
    total = shells.sum()
    rate = _shell_rate(shells, len(shells) - 1, 0.0)
    corr = shells[-1] * rate / (1.0 - rate)
    tail = (abs(shells[-1]) + abs(corr)) / (1.0 + abs(total + corr))
    return total + corr, stop_at, tail


def saran_fk_triple(p: FkParams, x, y, z, tol: float = 1e-12) -> SeriesResult:
    """Saran F_K by direct triple-series summation, accumulated over index
    shells m+n+p = s so the geometric tail bound on the convergence region
    applies shell-wise.

    The coefficient tensor is built in the balanced split

        T1[m] = (a1)_m x^m / (g1)_m      T2[n] = (b2)_n y^n / (g2)_n
        T3[p] = p! z^p / (g3)_p
        TJ1[n,p] = (a2)_{n+p} / (n! p!)  TJ2[m,p] = (b1)_{m+p} / (m! p!)

    whose factors all stay inside double range; the raw joint Pochhammers and
    bare inverse factorials separately do not.  Planes of constant m are
    streamed so memory stays quadratic in the truncation depth.
    """
    if not in_domain_fk(x, y, z):
        raise DomainError(f"arguments ({x}, {y}, {z}) outside D_K")
    x, y, z = complex(x), complex(y), complex(z)
    rho = _fk_domain_ratio(x, y, z)
    if rho == 0.0:
        return SeriesResult(1.0, 1, True, 0.0)
    n0 = math.log(max(tol * 1e-3, 1e-300)) / math.log(max(rho, 1e-6))
    N = int(np.clip(1.25 * n0 + 24, 24, 560))

    cplx = any(v.imag for v in (x, y, z)) or any(
        complex(getattr(p, f)).imag
        for f in ("alpha1", "alpha2", "beta1", "beta2", "gamma1", "gamma2", "gamma3")
    )
    terms = 0
    while True:
        f = np.arange(N, dtype=np.float64)

        def ratio_coef(top, bottom, arg, extra_fact=False):
            base = 1.0 if top is None else top + f[:-1]
            if extra_fact:
                base = base * (1.0 + f[:-1])
            step = base / (bottom + f[:-1]) * arg
            out = np.ones(N, dtype=np.asarray(step).dtype)
            np.cumprod(step, out=out[1:])
            return out

        def over_fact(base):
            s = np.arange(2 * N - 2, dtype=np.float64)
            dtype = np.complex128 if complex(base).imag else np.float64
            out = np.ones(2 * N - 1, dtype=dtype)
            np.cumprod((base + s) / (1.0 + s), out=out[1:])
            return out

        xm = ratio_coef(p.alpha1, p.gamma1, x if x.imag else x.real)
        yn = ratio_coef(p.beta2, p.gamma2, y if y.imag else y.real)
        zp = ratio_coef(None, p.gamma3, z if z.imag else z.real, extra_fact=True)
        idx = np.arange(N, dtype=np.int64)
        np_idx = idx[:, None] + idx[None, :]
        lb = sp.gammaln(f + 1.0)
        binom = np.exp(sp.gammaln(np_idx + 1.0) - lb[:, None] - lb[None, :])
        tj1 = over_fact(p.alpha2)[np_idx] * binom
        tj2 = over_fact(p.beta1)[np_idx] * binom

        plane0 = (yn[:, None] * zp[None, :]) * tj1
        np_flat = np_idx.ravel()
        shells = np.zeros(3 * N - 2, dtype=np.complex128 if cplx else np.float64)
        for m in range(N):
            plane = plane0 * (xm[m] * tj2[m, :])[None, :]
            if cplx:
                re = np.bincount(np_flat, weights=plane.real.ravel(), minlength=2 * N - 1)
                im = np.bincount(np_flat, weights=plane.imag.ravel(), minlength=2 * N - 1)
                shells[m : m + 2 * N - 1] += re + 1j * im
            else:
                shells[m : m + 2 * N - 1] += np.bincount(
                    np_flat, weights=plane.ravel(), minlength=2 * N - 1
                )
        terms += N * N * N
        total, stop_at, est = _sum_shells(shells[:N], tol, rho)
        if stop_at is not None:
            return SeriesResult(_as_value(total), terms, True, est)
        if N >= 560:
            return SeriesResult(_as_value(total), terms, False, est)
        N = min(560, int(N * 1.5) + 8)


def saran_fk_reexpand(p: FkParams, x, y, z, tol: float = 1e-12) -> SeriesResult:
    """Saran F_K through its expansion as a single series of 2F1 products."""
    if not in_domain_fk(x, y, z):
        raise DomainError(f"arguments ({x}, {y}, {z}) outside D_K")
    x, y, z = complex(x), complex(y), complex(z)
    if z == 0:
        # Only the leading term survives.
        f1 = gauss_2f1(p.beta1, p.alpha1, p.gamma1, x, tol)
        f2 = gauss_2f1(p.alpha2, p.beta2, p.gamma2, y, tol)
        return SeriesResult(
            _as_value(complex(f1.value) * complex(f2.value)),
            f1.terms_used + f2.terms_used,
            f1.converged and f2.converged,
            f1.est_trunc_error + f2.est_trunc_error,
        )
    rho = abs(z) / ((1.0 - abs(x)) * (1.0 - abs(y)))
    P = int(np.clip(math.ceil(math.log(max(tol * 1e-2, 1e-300)) / math.log(rho)) + 12, 16, 700))

    terms = 0
    for _ in range(3):
        k = np.arange(P + 1, dtype=np.float64)
        # (alpha2)_k (beta1)_k z^k / ((gamma3)_k k!) via the term-ratio
        # recurrence, which stays bounded at any truncation depth.
        step = (
            (p.alpha2 + k[:-1]) * (p.beta1 + k[:-1])
            / ((p.gamma3 + k[:-1]) * (1.0 + k[:-1]))
            * z
        )
        coef = np.ones(P + 1, dtype=step.dtype)
        np.cumprod(step, out=coef[1:])
        f1, n1, ok1, _ = _eval_2f1(np.asarray(p.beta1) + k, p.alpha1, p.gamma1, x, tol * 1e-2)
        f2, n2, ok2, _ = _eval_2f1(np.asarray(p.alpha2) + k, p.beta2, p.gamma2, y, tol * 1e-2)
        rows = coef * f1 * f2
        total = rows.sum()
        terms += n1 + n2 + P
        tail = np.abs(rows[-3:]).max()
        if tail <= tol * (1.0 + abs(total)) * (1.0 - min(rho, 0.97)) and ok1 and ok2:
            est = (tail * rho / (1.0 - min(rho, 0.97)) + tail) / (1.0 + abs(total))
            return SeriesResult(_as_value(total), terms, True, est)
        P = int(P * 1.5) + 8
        if P > 2000:
            break
    est = (tail * rho / (1.0 - min(rho, 0.97)) + tail) / (1.0 + abs(total))
    return SeriesResult(_as_value(total), terms, False, est)


# ---------------------------------------------------------------------------
# L-variable F_K
# ---------------------------------------------------------------------------


def _fk_L_domain_ok(L: int, zs) -> bool:
    az = [abs(complex(v)) for v in zs]
    if L == 3:
        # Index correspondence with the three-variable F_K: (z1, z2, z3)
        # plays the role of (x, z, y).
        return az[0] < 1 and az[2] < 1 and az[1] < (1 - az[0]) * (1 - az[2])
    if L == 4:
        if az[0] >= 1 or az[3] >= 1:
            return False
        return az[1] / (1 - az[0]) + az[2] / (1 - az[3]) < 1
    if L == 5:
        return sum(az) < 0.5
    return False


def fk_L(a1, a2, b, c, zs, tol: float = 1e-12) -> SeriesResult:
    """L-variable chain-coupled F_K, for L in {3, 4, 5}.

    The coefficient chains (a1)_{n1} (b_i)_{n_i + n_{i+1}} (a2)_{nL} over
    per-variable denominators (c_i)_{n_i} n_i!.  Truncation is a per-axis
    adaptive box with boundary-slab tail checks.
    """
    L = len(zs)
    if L not in (3, 4, 5):
        raise DomainError(f"fk_L supports L in {{3,4,5}}, got L={L}")
    if len(b) != L - 1 or len(c) != L:
        raise ValueError("need L-1 chain parameters and L denominators")
    for ci in c:
        if is_nonpositive_integer(ci):
            raise PoleError("fk_L denominator parameter is a non-positive integer")
    if not _fk_L_domain_ok(L, zs):
        raise DomainError(f"arguments {zs} outside the L={L} convergence region")
    zs = [complex(v) for v in zs]
    if all(v == 0 for v in zs):
        return SeriesResult(1.0, 1, True, 0.0)

    def axis_n(zi):
        azi = abs(zi)
        if azi == 0.0:
            return 1
        return int(np.clip(math.ceil(math.log(tol * 1e-2) / math.log(azi)) + 8, 10, 48))

    sizes = [axis_n(v) for v in zs]
    terms = 0
    for _ in range(4):
        axes = []
        for i, (Ni, zi, ci) in enumerate(zip(sizes, zs, c)):
            f = np.arange(Ni, dtype=np.float64)
            vec = np.power(zi, f) / (pochhammer_table(ci, Ni - 1) * sp.gamma(f + 1.0))
            if i == 0:
                vec = vec * pochhammer_table(a1, Ni - 1)
            if i == L - 1:
                vec = vec * pochhammer_table(a2, Ni - 1)
            shape = [1] * L
            shape[i] = Ni
            axes.append(vec.reshape(shape))
        tensor = axes[0]
        for v in axes[1:]:
            tensor = tensor * v
        for i, bi in enumerate(b):
            tab = pochhammer_table(bi, sizes[i] + sizes[i + 1] - 2)
            ii = np.arange(sizes[i])[:, None] + np.arange(sizes[i + 1])[None, :]
            shape = [1] * L
            shape[i] = sizes[i]
            shape[i + 1] = sizes[i + 1]
            tensor = tensor * tab[ii].reshape(shape)
        total = tensor.sum()
        terms += tensor.size
        # Boundary slabs: the summed absolute contribution of each face.
        grow = []
        worst = 0.0
        for i in range(L):
            if sizes[i] < 2:
                continue
            face = abs(np.take(tensor, sizes[i] - 1, axis=i)).sum()
            worst = max(worst, face)
            if face > tol * (1.0 + abs(total)) * 0.2:
                grow.append(i)
        if not grow:
            est = worst * 4.0 / (1.0 + abs(total))
            return SeriesResult(_as_value(total), terms, True, est)
        for i in grow:
            sizes[i] = min(48, int(sizes[i] * 1.5) + 4)
    est = worst * 4.0 / (1.0 + abs(total))
    return SeriesResult(_as_value(total), terms, False, est)


# ---------------------------------------------------------------------------
# Convolution family of shifted-2F1 double series
# ---------------------------------------------------------------------------


class CoeffSequence2D:
    """A two-index coefficient sequence with a declared geometric decay bound.

    The bound asserts |a(m, n)| <= decay_bound^(m+n) over the truncation
    ranges actually summed.  Tables are built at most once per size and
    cached; the cache is lock-guarded so sequences can be shared across
    threads.
    """

    def __init__(
        self,
        evaluator: Callable[[int, int], complex],
        decay_bound: float,
        table_builder: Callable[[int, int], np.ndarray] | None = None,
    ):
        self.evaluator = evaluator
        self.decay_bound = float(decay_bound)
        self._table_builder = table_builder
        self._table: np.ndarray | None = None
        self._lock = Lock()

    def table(self, M: int, N: int) -> np.ndarray:
        with self._lock:
            t = self._table
        if t is not None and t.shape[0] > M and t.shape[1] > N:
            return t[: M + 1, : N + 1]
        if self._table_builder is not None:
            t = np.asarray(self._table_builder(M, N))
        else:
            t = np.empty((M + 1, N + 1), dtype=np.complex128)
            for m in range(M + 1):
                for n in range(N + 1):
                    t[m, n] = self.evaluator(m, n)
            if np.all(t.imag == 0.0):
                t = t.real.copy()
        with self._lock:
            self._table = t
        return t

    def __call__(self, m: int, n: int) -> complex:
        m, n = int(m), int(n)
        with self._lock:
            t = self._table
        if t is not None and m < t.shape[0] and n < t.shape[1]:
            return complex(t[m, n])
        return complex(self.table(max(m, 8), max(n, 8))[m, n])

    def check_decay(self, M: int, N: int, slack: float = 1e-9) -> bool:
        tab = np.abs(self.table(M, N))
        m = np.arange(M + 1)[:, None] + np.arange(N + 1)[None, :]
        return bool(np.all(tab <= self.decay_bound**m + slack))


def delta_sequence() -> CoeffSequence2D:
    return CoeffSequence2D(lambda m, n: 1.0 if (m == 0 and n == 0) else 0.0, 1.0)


def geometric_sequence(r: float) -> CoeffSequence2D:
    if not (0 <= r < 1):
        raise ValueError("geometric ratio must lie in [0,1)")
    return CoeffSequence2D(lambda m, n: r ** (m + n), max(r, 1e-9))


def fk_diagonal_sequence(a1, a2, g3, probe: int = 60) -> CoeffSequence2D:
    """Diagonal sequence (a1)_n (a2)_n / (n! (g3)_n) on m = n, zero elsewhere.
    Feeding it to the convolution family reproduces Saran's F_K."""
    t1 = pochhammer_table(a1, probe)
    t2 = pochhammer_table(a2, probe)
    t3 = pochhammer_table(g3, probe)
    fact = sp.gamma(np.arange(probe + 1, dtype=np.float64) + 1.0)
    diag = t1 * t2 / (t3 * fact)

    def ev(m, n):
        if m != n:
            return 0.0
        if m <= probe:
            return complex(diag[m])
        v = diag[probe]
        for j in range(probe, m):
            v *= (a1 + j) * (a2 + j) / ((g3 + j) * (j + 1.0))
        return complex(v)

    vals = np.abs(diag[1:])
    bound = float(np.max(vals ** (1.0 / (2.0 * np.arange(1, probe + 1))))) if len(vals) else 1.0
    return CoeffSequence2D(ev, max(1.0, bound) * 1.05)


def convolve2d(a: CoeffSequence2D, b: CoeffSequence2D) -> CoeffSequence2D:
    """Discrete convolution (a*b)(m,n) = sum_{i<=m, j<=n} a(m-i, n-j) b(i, j).

    Whole tables are produced by one vectorized 2-D convolution of the factor
    tables; single entries fall back to the direct double sum."""

    def ev(m, n):
        total = 0.0 + 0.0j
        for i in range(m + 1):
            for j in range(n + 1):
                total += complex(a(m - i, n - j)) * complex(b(i, j))
        return total

    def build(M, N):
        ta = a.table(M, N)
        tb = b.table(M, N)
        from scipy.signal import convolve2d as conv2

        return conv2(ta, tb)[: M + 1, : N + 1]

    return CoeffSequence2D(ev, a.decay_bound + b.decay_bound, table_builder=build)


def generic_f_a(
    a: CoeffSequence2D,
    alpha1,
    beta1,
    gamma1,
    alpha2,
    beta2,
    gamma2,
    x1,
    x2,
    x3,
    x4,
    tol: float = 1e-12,
) -> SeriesResult:
    """Double series sum a(m,n) 2F1(alpha1+m, beta1; gamma1; x1)
    2F1(alpha2+n, beta2; gamma2; x2) x3^m x4^n."""
    for name, g in (("gamma1", gamma1), ("gamma2", gamma2)):
        if is_nonpositive_integer(g):
            raise PoleError(f"generic_f_a parameter {name} is a non-positive integer")
    x1, x2, x3, x4 = (complex(v) for v in (x1, x2, x3, x4))
    if abs(x1) >= 1.0 or abs(x2) >= 1.0:
        raise DomainError("generic_f_a needs |x1| < 1 and |x2| < 1")
    if a.decay_bound * max(abs(x3), abs(x4)) >= 1.0:
        raise DomainError("decay bound times max(|x3|, |x4|) must stay below 1")

    r3 = min(0.95, a.decay_bound * abs(x3) / (1.0 - abs(x1)))
    r4 = min(0.95, a.decay_bound * abs(x4) / (1.0 - abs(x2)))

    def axis_n(r):
        if r == 0.0:
            return 1
        return int(np.clip(math.ceil(math.log(tol * 1e-2) / math.log(r)) + 8, 12, 220))

    M, N = axis_n(r3), axis_n(r4)
    terms = 0
    for _ in range(3):
        fm = np.arange(M, dtype=np.float64)
        fn = np.arange(N, dtype=np.float64)
        f1, n1, ok1, _ = _eval_2f1(np.asarray(alpha1) + fm, beta1, gamma1, x1, tol * 1e-2)
        f2, n2, ok2, _ = _eval_2f1(np.asarray(alpha2) + fn, beta2, gamma2, x2, tol * 1e-2)
        coefs = a.table(M - 1, N - 1)
        tensor = coefs * np.outer(f1 * np.power(x3, fm), f2 * np.power(x4, fn))
        total = tensor.sum()
        terms += n1 + n2 + tensor.size
        tails = []
        if M > 1:
            tails.append(abs(tensor[-1, :]).sum())
        if N > 1:
            tails.append(abs(tensor[:, -1]).sum())
        worst = max(tails) if tails else 0.0
        if worst <= tol * (1.0 + abs(total)) * 0.2 and ok1 and ok2:
            est = worst * 4.0 / (1.0 + abs(total))
            return SeriesResult(_as_value(total), terms, True, est)
        M = min(320, int(M * 1.5) + 4)
        N = min(320, int(N * 1.5) + 4)
    est = worst * 4.0 / (1.0 + abs(total))
    return SeriesResult(_as_value(total), terms, False, est)
