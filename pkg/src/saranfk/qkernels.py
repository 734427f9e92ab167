"""q-side machinery: basic hypergeometric series, the q-analogue of Saran's
F_K, triple q-series, Jackson integrals, q-measures, the shift-operator
kernel and the discrete finite-sum weights.

Conventions.  Public Phi-level operations take exponent parameters (a stands
for the base q^a); the raw-base entry points are the primitive series `rphis`
and the discrete double-sum RHS `gasper_discrete_3phi2`, whose free
parameters genuinely live at base level.

Numerics.  Every series is summed by term recurrence: ratios of the form
(1 - a q^l) / (1 - b q^l) stay moderate even when individual q-shifted
factorials overflow (upper parameters q^{-n} with large n), so terminating
series on the q-lattice evaluate stably.  Terminating series are cut off
explicitly (`terminate_after`): past the termination index the analytic terms
are zero, but rounding residue would be re-amplified by the q^{-l} step
factors of series with fewer denominator than numerator parameters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import (
    QContext,
    q_gamma,
    q_pochhammer_inf,
    q_pochhammer_inf_ratio,
    q_pochhammer_table,
)
from .errors import ConvergenceError, DomainError, PoleError
from .series import FkParams, SeriesResult, _as_value

__all__ = [
    "Phi3Spec",
    "QDirichletMeasure",
    "QHypergeometricMeasure",
    "QfkShiftParams",
    "DiscreteFkParams",
    "rphis",
    "phi_k_q",
    "phi3",
    "jackson_integral",
    "q_measure_density",
    "q_measure_rule",
    "q_moment",
    "qshift_operator_kernel",
    "discrete_weight",
    "discrete_weight_limit",
    "gasper_discrete_3phi2",
]


def q_termination_index(base, q: float, tol: float = 1e-9):
    """Return n when base == q^{-n} for some integer n >= 0, else None."""
    b = complex(base)
    if abs(b) < 1.0 + 1e-12:
        return 0 if abs(b - 1.0) < tol else None
    n = round(-math.log(abs(b)) / math.log(q))
    if n >= 0 and abs(b * q**n - 1.0) < tol:
        return n
    return None


def _check_lower_poles(lowers, q: float, below: int | None = None):
    """Reject lower parameters of the form q^{-n}.

    When the series terminates after `below` terms, only poles with n < below
    are ever reached, so larger n are allowed.
    """
    for b in lowers:
        for bv in np.atleast_1d(np.asarray(b)).ravel():
            n = q_termination_index(bv, q)
            if n is not None and (below is None or n < below):
                raise PoleError(f"lower parameter {bv} equals q^-{n}: series undefined")


def _rphis_array(
    uppers: Sequence,
    lowers: Sequence,
    z,
    ctx: QContext,
    tol: float = 1e-12,
    terminate_after=None,
    max_terms: int = 5000,
):
    """Basic hypergeometric series with full broadcasting over parameters and
    argument.  Returns (value array, terms, converged, tail estimate).

    terminate_after gives, per broadcast element, the index of the last
    nonzero term; later terms are forced to zero.
    """
    q = ctx.q
    spow = 1 + len(lowers) - len(uppers)
    arrays = [np.asarray(v) for v in (*uppers, *lowers, z)]
    shape = np.broadcast_shapes(*(a.shape for a in arrays))
    if terminate_after is not None:
        ta = np.broadcast_to(np.asarray(terminate_after, dtype=np.int64), shape)
        nsteps = int(ta.max()) if ta.size else 0
    else:
        ta = None
        nsteps = max_terms
    cplx = any(np.iscomplexobj(a) for a in arrays)
    dtype = np.complex128 if cplx else np.float64
    zb = np.broadcast_to(np.asarray(z), shape).astype(dtype)

    term = np.ones(shape, dtype=dtype)
    total = np.ones(shape, dtype=dtype)
    small = 0
    converged = ta is not None
    tmax = 0.0
    ell = 0
    while ell < nsteps:
        ql = q**ell
        num = np.ones(shape, dtype=dtype)
        for u in uppers:
            num = num * (1.0 - np.asarray(u) * ql)
        den = np.full(shape, 1.0 - q ** (ell + 1), dtype=dtype)
        for b in lowers:
            den = den * (1.0 - np.asarray(b) * ql)
        if ta is not None:
            # Elements already past their termination index produce zero terms;
            # keep their denominators off the pole lattice so the batch step
            # stays finite.
            den = np.where(ell + 1 <= ta, den, 1.0)
        if np.any(np.abs(den) < 1e-280):
            raise PoleError("q-series denominator factor vanished")
        term = term * (num / den) * zb
        if spow:
            sign = -1.0 if spow % 2 else 1.0
            term = term * (sign * q ** (ell * spow))
        ell += 1
        if ta is not None:
            term = np.where(ell <= ta, term, 0.0)
        total = total + term
        tmax = float(np.max(np.abs(term)))
        if ta is None:
            if tmax <= tol * (1.0 + float(np.max(np.abs(total)))) * 0.25:
                small += 1
                if small >= 3 and ell >= 8:
                    converged = True
                    break
            else:
                small = 0
    scale = 1.0 + float(np.max(np.abs(total)))
    est = 0.0 if ta is not None else (4.0 * tmax) / scale
    return total, ell, converged, est


def rphis(upper, lower, z, ctx: QContext, tol: float = 1e-12) -> SeriesResult:
    """Basic hypergeometric series r_phi_s with raw base parameters.

    A terminating upper entry q^{-N} is detected and the series summed
    exactly in N+1 terms; otherwise |z| < 1 is required for r = s+1, r <= s
    converges everywhere, and r > s+1 is rejected for z != 0.
    """
    z = complex(z)
    known = [t for t in (q_termination_index(u, ctx.q) for u in upper) if t is not None]
    n_stop = min(known) if known else None
    _check_lower_poles(lower, ctx.q, below=n_stop)
    r, s = len(upper), len(lower)
    if n_stop is None:
        if r > s + 1 and z != 0:
            raise DomainError("r_phi_s with r > s+1 diverges unless terminating")
        if r == s + 1 and abs(z) >= 1.0:
            raise DomainError("r_phi_s with r = s+1 requires |z| < 1")
    value, n, ok, est = _rphis_array(upper, lower, z, ctx, tol=tol, terminate_after=n_stop)
    return SeriesResult(_as_value(value[()]), n + 1, ok, est)


# ---------------------------------------------------------------------------
# Triple q-series
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Phi3Spec:
    """Parameter groups of the three-variable basic hypergeometric series.

    Group -> coupled index: a: m+n+p | b: m+n | bp: n+p | bpp: p+m | c: m |
    cp: n | cpp: p, with the same split (e, g, gp, gpp, h, hp, hpp) in the
    denominator.  All entries are raw bases; no denominator entry may equal
    q^{-m}.
    """

    a: tuple = ()
    b: tuple = ()
    bp: tuple = ()
    bpp: tuple = ()
    c: tuple = ()
    cp: tuple = ()
    cpp: tuple = ()
    e: tuple = ()
    g: tuple = ()
    gp: tuple = ()
    gpp: tuple = ()
    h: tuple = ()
    hp: tuple = ()
    hpp: tuple = ()

    def validate(self, q: float):
        for group in (self.e, self.g, self.gp, self.gpp, self.h, self.hp, self.hpp):
            _check_lower_poles(group, q)


def _group_terminations(group, q: float):
    return [t for t in (q_termination_index(v, q) for v in group) if t is not None]


def _axis_size(zval, q: float, tol: float, terminations, cap: int = 64) -> int:
    if terminations:
        return min(terminations) + 1
    az = abs(complex(zval))
    if az == 0.0:
        return 1
    if az >= 1.0:
        raise DomainError("phi3 argument must satisfy |arg| < 1 unless terminating")
    return int(np.clip(math.ceil(math.log(tol * 1e-2) / math.log(az)) + 8, 10, cap))


def phi3(spec: Phi3Spec, x, y, z, ctx: QContext, tol: float = 1e-12) -> SeriesResult:
    """Triple basic hypergeometric series, summed over an adaptive index box
    with the joint q-shifted factorials gathered from cumulative tables."""
    q = ctx.q
    spec.validate(q)
    x, y, z = complex(x), complex(y), complex(z)

    tm = _group_terminations((*spec.c, *spec.a, *spec.b, *spec.bpp), q)
    tn = _group_terminations((*spec.cp, *spec.a, *spec.b, *spec.bp), q)
    tp = _group_terminations((*spec.cpp, *spec.a, *spec.bp, *spec.bpp), q)
    M = _axis_size(x, q, tol, tm)
    N = _axis_size(y, q, tol, tn)
    P = _axis_size(z, q, tol, tp)

    def tab(group, upto):
        out = None
        for v in group:
            t = q_pochhammer_table(v, upto, q)
            out = t if out is None else out * t
        return out

    terms_used = 0
    for _ in range(3):
        m = np.arange(M)
        n = np.arange(N)
        p = np.arange(P)
        qfact = q_pochhammer_table(q, max(M, N, P) - 1, q)

        def axis_vec(val, length, num_group, den_group):
            f = np.arange(length)
            vec = np.power(val if val.imag else val.real, f) / qfact[:length]
            tnum = tab(num_group, length - 1)
            if tnum is not None:
                vec = vec * tnum
            tden = tab(den_group, length - 1)
            if tden is not None:
                vec = vec / tden
            return vec

        vx = axis_vec(x, M, spec.c, spec.h)
        vy = axis_vec(y, N, spec.cp, spec.hp)
        vz = axis_vec(z, P, spec.cpp, spec.hpp)
        tensor = vx[:, None, None] * vy[None, :, None] * vz[None, None, :]

        def joint(num_group, den_group, idx, upto):
            tnum = tab(num_group, upto)
            tden = tab(den_group, upto)
            if tnum is None and tden is None:
                return None
            vals = tnum if tnum is not None else np.ones(upto + 1)
            if tden is not None:
                vals = vals / tden
            return vals[idx]

        j = joint(spec.a, spec.e, m[:, None, None] + n[None, :, None] + p[None, None, :], M + N + P - 3)
        if j is not None:
            tensor = tensor * j
        j = joint(spec.b, spec.g, m[:, None] + n[None, :], M + N - 2)
        if j is not None:
            tensor = tensor * j[:, :, None]
        j = joint(spec.bp, spec.gp, n[:, None] + p[None, :], N + P - 2)
        if j is not None:
            tensor = tensor * j[None, :, :]
        j = joint(spec.bpp, spec.gpp, m[:, None] + p[None, :], M + P - 2)
        if j is not None:
            tensor = tensor * j[:, None, :]

        total = tensor.sum()
        terms_used += tensor.size
        grow = []
        worst = 0.0
        for axis, (size, t_axis) in enumerate(((M, tm), (N, tn), (P, tp))):
            if t_axis or size < 2:
                continue
            face = float(np.abs(np.take(tensor, size - 1, axis=axis)).sum())
            worst = max(worst, face)
            if face > tol * (1.0 + abs(total)) * 0.2:
                grow.append(axis)
        if not grow:
            est = worst * 4.0 / (1.0 + abs(total))
            return SeriesResult(_as_value(total), terms_used, True, est)
        if 0 in grow:
            M = min(96, int(M * 1.5) + 4)
        if 1 in grow:
            N = min(96, int(N * 1.5) + 4)
        if 2 in grow:
            P = min(96, int(P * 1.5) + 4)
    est = worst * 4.0 / (1.0 + abs(total))
    return SeriesResult(_as_value(total), terms_used, False, est)


# ---------------------------------------------------------------------------
# q-analogue of Saran's F_K
# ---------------------------------------------------------------------------


def _phi_k_spec(p: FkParams, q: float) -> Phi3Spec:
    return Phi3Spec(
        bp=(q ** complex(p.alpha2),),
        bpp=(q ** complex(p.beta1),),
        c=(q ** complex(p.alpha1),),
        cp=(q ** complex(p.beta2),),
        h=(q ** complex(p.gamma1),),
        hp=(q ** complex(p.gamma2),),
        hpp=(q ** complex(p.gamma3),),
    )


def phi_k_p_tables(p: FkParams, X, Y, ctx: QContext, pmax: int, tol: float = 1e-13):
    """Decomposition of the q-F_K over its third index:

        Phi_K(X, Y, Z) = sum_p coef[p] A[..., p] B[..., p] Z^p

    with A, B shifted 2phi1 tables over argument arrays X, Y; parameters are
    exponents.
    """
    q = ctx.q
    ps = np.arange(pmax + 1, dtype=np.float64)
    qa2, qb1 = q ** complex(p.alpha2), q ** complex(p.beta1)
    coef = (
        q_pochhammer_table(qa2, pmax, q)
        * q_pochhammer_table(qb1, pmax, q)
        / (
            q_pochhammer_table(q ** complex(p.gamma3), pmax, q)
            * q_pochhammer_table(q, pmax, q)
        )
    )
    shifts = q**ps
    A, *_ = _rphis_array(
        [qb1 * shifts, q ** complex(p.alpha1)],
        [q ** complex(p.gamma1)],
        np.asarray(X)[..., None],
        ctx,
        tol=tol,
    )
    B, *_ = _rphis_array(
        [qa2 * shifts, q ** complex(p.beta2)],
        [q ** complex(p.gamma2)],
        np.asarray(Y)[..., None],
        ctx,
        tol=tol,
    )
    return coef, A, B


def _phi_k_pmax(z_mag: float, tol: float) -> int:
    if z_mag == 0.0:
        return 0
    return int(np.clip(math.ceil(math.log(tol * 1e-2) / math.log(min(z_mag, 0.97))) + 6, 8, 160))


def _zpowers(z: complex, pmax: int) -> np.ndarray:
    if z == 0:
        out = np.zeros(pmax + 1)
        out[0] = 1.0
        return out
    return np.power(z, np.arange(pmax + 1))


def _phi_k_reexpand(p: FkParams, x, y, z, ctx: QContext, tol: float = 1e-12):
    pmax = _phi_k_pmax(abs(complex(z)), tol)
    coef, A, B = phi_k_p_tables(p, complex(x), complex(y), ctx, pmax, tol=tol * 1e-2)
    rows = coef * A * B * _zpowers(complex(z), pmax)
    total = rows.sum()
    tail = float(np.abs(rows[-1])) if pmax else 0.0
    return _as_value(total), rows.size, tail / (1.0 + abs(total))


def phi_k_q(p: FkParams, x, y, z, ctx: QContext, tol: float = 1e-12) -> SeriesResult:
    """q-analogue of Saran's F_K with exponent parameters.

    Evaluates both the triple series and the 2phi1 reexpansion, cross-checks
    them, and returns the reexpansion value; a mismatch beyond 100*tol raises
    ConvergenceError.
    """
    x, y, z = complex(x), complex(y), complex(z)
    if max(abs(x), abs(y), abs(z)) >= 1.0:
        raise DomainError("Phi_K requires |x| < 1, |y| < 1, |z| < 1")
    value, nterms, est = _phi_k_reexpand(p, x, y, z, ctx, tol)
    triple = phi3(_phi_k_spec(p, ctx.q), x, y, z, ctx, tol)
    diff = abs(complex(value) - complex(triple.value)) / (1.0 + abs(complex(value)))
    if diff > 100.0 * tol:
        raise ConvergenceError(
            f"Phi_K cross-form mismatch {diff:.3e} beyond {100.0 * tol:.1e}"
        )
    return SeriesResult(value, nterms + triple.terms_used, True, max(est, diff))


# ---------------------------------------------------------------------------
# Jackson integrals and q-measures
# ---------------------------------------------------------------------------


def _lattice_size(ctx: QContext, decay: float = 1.0, scale: float = 1.0) -> int:
    n = math.ceil(math.log(ctx.jackson_tail_tol) / (decay * math.log(ctx.q)))
    return int(max(40, n + 8) * scale)


def jackson_integral(f, k: int, ctx: QContext, scale: float = 1.0, vectorized: bool = True):
    """k-dimensional Jackson integral (1-q)^k sum_n f(q^n) q^(n1+...+nk).

    With vectorized=True (default) f receives open-mesh arrays of lattice
    values and must broadcast; otherwise f is called pointwise.  The per-axis
    cutoff starts at max(40, log_q tail_tol) and doubles until the boundary
    slab of the weighted sum is negligible.
    """
    if not (1 <= k <= 3):
        raise DomainError("jackson_integral supports dimensions 1..3")
    q = ctx.q
    N = _lattice_size(ctx, 1.0, scale)
    cap = {1: 20000, 2: 2000, 3: 500}[k]
    for _ in range(5):
        t = q ** np.arange(N, dtype=np.float64)
        grids = []
        for i in range(k):
            shp = [1] * k
            shp[i] = N
            grids.append(t.reshape(shp))
        if vectorized:
            vals = np.broadcast_to(np.asarray(f(*grids)), (N,) * k)
        else:
            vals = np.empty((N,) * k, dtype=np.complex128)
            for idx in np.ndindex(*(N,) * k):
                vals[idx] = f(*(t[i] for i in idx))
        wgrid = t.reshape([-1] + [1] * (k - 1))
        for i in range(1, k):
            shp = [1] * k
            shp[i] = N
            wgrid = wgrid * t.reshape(shp)
        weighted = (1.0 - q) ** k * wgrid * vals
        total = weighted.sum()
        tail = max(
            float(np.abs(np.take(weighted, N - 1, axis=axis)).sum()) for axis in range(k)
        )
        if tail <= ctx.jackson_tail_tol * (1.0 + abs(total)):
            out = complex(total)
            return out.real if out.imag == 0.0 else out
        if N >= cap:
            raise ConvergenceError("Jackson lattice tail bound not met at cutoff cap")
        N = min(cap, N * 2)
    raise ConvergenceError("Jackson lattice sum failed to stabilize")


@dataclass(frozen=True)
class QDirichletMeasure:
    """q-deformation of the Dirichlet measure; parameters are exponents."""

    alpha: complex
    beta: complex
    ctx: QContext

    def __post_init__(self):
        if min(complex(self.alpha).real, complex(self.beta).real) <= 0:
            raise DomainError("q-Dirichlet measure needs min(Re a, Re b) > 0")


@dataclass(frozen=True)
class QHypergeometricMeasure:
    """q-deformation of the hypergeometric measure (slot exponents)."""

    alpha: complex
    beta: complex
    gamma: complex
    eta: complex
    ctx: QContext

    def __post_init__(self):
        a, b, g, e = (complex(v) for v in (self.alpha, self.beta, self.gamma, self.eta))
        if min(e.real, g.real, (e + g - a - b).real) <= 0:
            raise DomainError(
                "q-hypergeometric measure needs min(Re eta, Re gamma,"
                " Re(eta+gamma-alpha-beta)) > 0"
            )


QMeasureSpec = QDirichletMeasure | QHypergeometricMeasure


def _lattice_index(t, q: float) -> int:
    tv = float(np.real(t))
    if not (0.0 < tv <= 1.0):
        raise DomainError(f"t={t} is not a q-lattice point")
    n = max(0, round(math.log(tv) / math.log(q)))
    if abs(q**n - tv) > 1e-9 * max(tv, 1e-30):
        raise DomainError(f"t={t} is not a q-lattice point q^n")
    return n


def _realize(c):
    """Drop a zero imaginary part so real parameters stay on float paths."""
    c = complex(c)
    return c.real if c.imag == 0.0 else c


def _q_density_lattice(spec: QMeasureSpec, n: np.ndarray):
    """Density values at lattice points t = q^n, vectorized over n."""
    ctx = spec.ctx
    q = ctx.q
    t = q ** n.astype(np.float64)
    if isinstance(spec, QDirichletMeasure):
        a, b = _realize(spec.alpha), _realize(spec.beta)
        const = q_gamma(a + b, ctx) / (q_gamma(a, ctx) * q_gamma(b, ctx))
        ratio = q_pochhammer_inf_ratio(t * q, t * q**b, ctx)
        return const * np.power(t, a - 1.0) * ratio
    a, b, g, e = (_realize(v) for v in (spec.alpha, spec.beta, spec.gamma, spec.eta))
    const = (
        q_gamma(e + g - a, ctx)
        * q_gamma(e + g - b, ctx)
        / (q_gamma(e, ctx) * q_gamma(g, ctx) * q_gamma(e + g - a - b, ctx))
    )
    ratio = q_pochhammer_inf_ratio(t * q, t * q**g, ctx)
    # The 3phi1 factor terminates at lattice points: its upper entry 1/t is
    # q^{-n} there, capping the series at n+1 exact terms.
    phi31, *_ = _rphis_array(
        [q**a, q**b, 1.0 / t],
        [q**g],
        t * q ** (g - a - b),
        ctx,
        terminate_after=n,
    )
    return const * np.power(t, e - 1.0) * ratio * phi31


def q_measure_density(spec: QMeasureSpec, t):
    """Density at a q-lattice point t = q^n (q-integrals only sample these)."""
    n = _lattice_index(t, spec.ctx.q)
    out = complex(_q_density_lattice(spec, np.asarray([n]))[0])
    return out.real if out.imag == 0.0 else out


def _measure_decay(spec: QMeasureSpec) -> float:
    if isinstance(spec, QDirichletMeasure):
        return complex(spec.alpha).real
    a, b, g, e = (complex(v) for v in (spec.alpha, spec.beta, spec.gamma, spec.eta))
    return (e + g - a - b).real


def q_measure_rule(spec: QMeasureSpec, scale: float = 1.0):
    """Lattice nodes and effective weights of a q-measure, so that
    integral(f d mu) ~ weights @ f(nodes)."""
    ctx = spec.ctx
    q = ctx.q
    N = _lattice_size(ctx, max(_measure_decay(spec), 0.05), scale)
    for _ in range(4):
        n = np.arange(N)
        t = q ** n.astype(np.float64)
        w = (1.0 - q) * t * _q_density_lattice(spec, n)
        # Geometric extrapolation of the dropped tail from the last weights.
        rhat = min(float(np.abs(w[-1]) / max(np.abs(w[-2]), 1e-300)), 0.98)
        tail = float(np.abs(w[-1])) * (1.0 + rhat / (1.0 - rhat))
        if tail <= ctx.jackson_tail_tol * (1.0 + float(np.abs(w).sum())):
            return t, w
        if N >= 4000:
            break
        N = min(4000, N * 2)
    raise ConvergenceError("q-measure lattice tail bound not met")


def q_moment(spec: QMeasureSpec, ell: int):
    """Closed-form lattice moment integral(t^ell d mu)."""
    if ell < 0:
        raise ValueError("moment order must be non-negative")
    q = spec.ctx.q
    if isinstance(spec, QDirichletMeasure):
        a, b = complex(spec.alpha), complex(spec.beta)
        num = q_pochhammer_table(q**a, ell, q)[ell]
        den = q_pochhammer_table(q ** (a + b), ell, q)[ell]
        return _as_value(num / den)
    a, b, g, e = (complex(v) for v in (spec.alpha, spec.beta, spec.gamma, spec.eta))
    # Slot solve: the measure was built from (eta-lam, gam-lam,
    # gam-lam+eta-nu, nu); recover the original exponents.
    nu = e
    lam = e + g - a - b
    eta_big = a + lam
    gam_big = b + lam
    num = q_pochhammer_table(q**nu, ell, q)[ell] * q_pochhammer_table(q**lam, ell, q)[ell]
    den = (
        q_pochhammer_table(q**gam_big, ell, q)[ell]
        * q_pochhammer_table(q**eta_big, ell, q)[ell]
    )
    return _as_value(num / den)


# ---------------------------------------------------------------------------
# Shift-operator kernel
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QfkShiftParams:
    """Exponent parameters of the shift-operator q-Erdelyi integrand."""

    alpha1: float
    alpha2: float
    beta1: float
    beta2: float
    gamma3: float
    eta1: float
    eta2: float
    mu2: float
    lam1: float
    lam2: float
    lam3: float


def qshift_operator_kernel(
    p: QfkShiftParams,
    u,
    v,
    w,
    x,
    y,
    z,
    ctx: QContext,
    tol: float = 1e-12,
    kmax: int | None = None,
):
    """Shift-operator series applied to the q-F_K, as the explicit k-sum

        sum_k c_k (w z q^(alpha2 - eta2))^k A_k(u) B_k(v)
              Phi_K(u x q^(k + lam3), v y q^(k + eta2), w z).

    u, v, w must be q-lattice points; the 3phi2 factors inside A_k and B_k
    have upper entries 1/u and 1/v and therefore terminate exactly there.
    """
    q = ctx.q
    iu = _lattice_index(u, q)
    iv = _lattice_index(v, q)
    _lattice_index(w, q)
    u = float(np.real(u))
    v = float(np.real(v))
    wv = float(np.real(w))
    x, y, z = complex(x), complex(y), complex(z)
    wz = wv * z
    base = abs(wz) * q ** (p.alpha2 - p.eta2)
    if wz != 0 and base >= 0.999:
        raise ConvergenceError("shift-operator k-sum is non-convergent: |wz| q^(a2-e2) >= 1")
    if kmax is None:
        kmax = 0 if wz == 0 else int(
            np.clip(math.ceil(math.log(tol * 1e-2) / math.log(max(base, 1e-12))), 8, 300)
        )
    ks = np.arange(kmax + 1, dtype=np.float64)
    ck = (
        q_pochhammer_table(q**p.eta2, kmax, q)
        / q_pochhammer_table(q, kmax, q)
        * _zpowers(wz * q ** (p.alpha2 - p.eta2), kmax)
    )

    shiftA = q ** (p.lam3 + ks)
    prefA = q_pochhammer_inf(u * x * shiftA, ctx) / q_pochhammer_inf(u * x, ctx)
    phiA, *_ = _rphis_array(
        [shiftA, q ** (p.lam1 - p.eta1), 1.0 / u],
        [q**p.lam1, q / (u * x)],
        q,
        ctx,
        tol=tol,
        terminate_after=iu,
    )
    A = prefA * phiA

    shiftB = q ** (p.eta2 + ks)
    prefB = q_pochhammer_inf(v * y * shiftB, ctx) / q_pochhammer_inf(v * y, ctx)
    phiB, *_ = _rphis_array(
        [shiftB, q ** (p.lam2 - p.mu2), 1.0 / v],
        [q**p.lam2, q / (v * y)],
        q,
        ctx,
        tol=tol,
        terminate_after=iv,
    )
    B = prefB * phiB

    inner = FkParams(
        alpha1=p.alpha1,
        alpha2=p.alpha2 - p.eta2,
        beta1=p.beta1 - p.lam3,
        beta2=p.beta2,
        gamma1=p.alpha1 - p.lam1 + p.eta1,
        gamma2=p.beta2 - p.lam2 + p.mu2,
        gamma3=p.beta1 - p.lam3,
    )
    pmax = _phi_k_pmax(abs(wz), tol)
    coef, FA, FB = phi_k_p_tables(
        inner,
        u * x * q ** (ks + p.lam3),
        v * y * q ** (ks + p.eta2),
        ctx,
        pmax,
        tol=tol * 1e-2,
    )
    phik = (coef[None, :] * FA * FB * _zpowers(wz, pmax)[None, :]).sum(axis=1)
    return _as_value((ck * A * B * phik).sum())


# ---------------------------------------------------------------------------
# Discrete weights and the double-sum identity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DiscreteFkParams:
    """Exponent parameters of the discrete triple-sum identity weights."""

    alpha1: float
    beta2: float
    gamma1: float
    gamma2: float
    gamma3: float
    lam1: float
    lam2: float
    mu1: float
    mu2: float
    mu3: float


def _qp(base, n, q):
    return q_pochhammer_table(base, n, q)[n] if n >= 0 else None


def _w_generic(i: int, r: int, a: float, g: float, lam: float, mu: float, ctx: QContext):
    q = ctx.q
    top = _qp(q**a, r, q) * _qp(q, r, q) / (_qp(q**g, r, q) * _qp(q**lam, r, q))
    gl = g + lam - a - mu
    mid = (
        _qp(q**gl, r - i, q)
        / _qp(q, r - i, q)
        * _qp(q**mu, i, q)
        / _qp(q, i, q)
    )
    phi, *_ = _rphis_array(
        [q ** (lam - a), q ** (g - a), q ** float(i - r)],
        [q**gl, q ** float(1 - r - a)],
        q ** float(1 - i - mu),
        ctx,
        terminate_after=r - i,
    )
    return top * mid * float(phi[()]) * q ** ((r - i) * mu)


def discrete_weight(which: str, i: int, r: int, p: DiscreteFkParams, ctx: QContext):
    """Finite-sum weights w1(i,r), w2(j,s), w3(k,t) of the discrete identity."""
    if not (0 <= i <= r):
        raise DomainError(f"weight index {i} outside 0..{r}")
    q = ctx.q
    if which == "w1":
        return _w_generic(i, r, p.alpha1, p.gamma1, p.lam1, p.mu1, ctx)
    if which == "w2":
        return _w_generic(i, r, p.beta2, p.gamma2, p.lam2, p.mu2, ctx)
    if which == "w3":
        return (
            _qp(q, r, q)
            / _qp(q**p.gamma3, r, q)
            * _qp(q ** (p.gamma3 - p.mu3), r - i, q)
            / _qp(q, r - i, q)
            * _qp(q**p.mu3, i, q)
            / _qp(q, i, q)
            * q ** ((r - i) * p.mu3)
        )
    raise DomainError(f"unknown weight {which!r}")


def discrete_weight_limit(which: str, i: int, p: DiscreteFkParams, ctx: QContext):
    """Limits of w(r-i, r; q) as the truncation index r grows without bound."""
    q = ctx.q

    def lim_generic(a, g, lam, mu):
        gl = g + lam - a - mu
        pref = (
            q_pochhammer_inf(q**a, ctx)
            * q_pochhammer_inf(q**mu, ctx)
            / (q_pochhammer_inf(q**g, ctx) * q_pochhammer_inf(q**lam, ctx))
        )
        mid = _qp(q**gl, i, q) / _qp(q, i, q) * q ** (i * mu)
        phi, *_ = _rphis_array(
            [q ** (lam - a), q ** (g - a), q ** float(-i)],
            [q**gl],
            q ** (a - mu + i),
            ctx,
            terminate_after=i,
        )
        return pref * mid * float(phi[()])

    if which == "w1":
        return lim_generic(p.alpha1, p.gamma1, p.lam1, p.mu1)
    if which == "w2":
        return lim_generic(p.beta2, p.gamma2, p.lam2, p.mu2)
    if which == "w3":
        return (
            q_pochhammer_inf(q**p.mu3, ctx)
            / q_pochhammer_inf(q**p.gamma3, ctx)
            * _qp(q ** (p.gamma3 - p.mu3), i, q)
            / _qp(q, i, q)
            * q ** (i * p.mu3)
        )
    raise DomainError(f"unknown weight {which!r}")


def gasper_discrete_3phi2(alpha, beta, gamma_, delta, lam, mu, nu, n: int, ctx: QContext):
    """RHS double sum of the discrete 3phi2 transformation (raw bases).

    The LHS it reproduces is 3phi2(alpha, beta, q^-n; gamma, delta; q, q);
    both sides are exact finite sums.
    """
    q = ctx.q
    gmln = gamma_ * mu / (lam * nu)
    _check_lower_poles([gamma_, mu, lam, nu, delta, gmln], q)
    pref = _qp(q, n, q) * _qp(lam, n, q) / (_qp(gamma_, n, q) * _qp(mu, n, q))
    qtab = q_pochhammer_table(q, n, q)
    nutab = q_pochhammer_table(nu, n, q)
    gmtab = q_pochhammer_table(gmln, n, q)
    total = 0.0
    for k in range(n + 1):
        inner3, *_ = _rphis_array(
            [mu / lam, gamma_ / lam, q ** float(k - n)],
            [gmln, q ** float(1 - n) / lam],
            q ** float(1 - k) / nu,
            ctx,
            terminate_after=n - k,
        )
        inner4, *_ = _rphis_array(
            [alpha, beta, mu, q ** float(-k)],
            [lam, nu, delta],
            q,
            ctx,
            terminate_after=k,
        )
        total += (
            nutab[k]
            * gmtab[n - k]
            / (qtab[k] * qtab[n - k])
            * nu ** (n - k)
            * float(inner3[()])
            * float(inner4[()])
        )
    return pref * total
