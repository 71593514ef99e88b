"""Fractional Laplacian representations applied to test fields.

Three interchangeable routes to -(-Delta)^(alpha/2):

  * fl_standard   - the Levy-range singular integral (0 < alpha < 2),
  * fl_order_m    - the order-2m difference kernel (0 < alpha < 2m),
  * fl_regularized - the eps-regularized form, valid for every alpha >= 0
    and collapsing to (-1)^(p+1) Delta^p at alpha = 2p.

All of them integrate the angular average first and the radial variable
second.  Plane waves take the analytic angular reduction through the
unit-sphere moment; the radial factor is still computed by genuine
quadrature, so cross-checks against -|k|^alpha stay meaningful.
"""

import math
import warnings
from dataclasses import dataclass, replace

import numpy as np

from .constants import (DomainError, c_standard_levy, diff_weights, gamma,
                        norm_constants, unit_sphere_moment,
                        v_integral_quadrature)
from .fields import PlaneWave
from .quad import QuadSpec, integrate_adaptive, reg_halfline


@dataclass
class FLResult:
    value: complex
    error: float
    representation: str
    alpha: float
    n: int
    m: int | None = None


def sphere_rule(n, level=0):
    """Full-sphere quadrature nodes and weights (total weight |S^(n-1)|).

    n = 1 is the exact two-point rule; n = 2 uses the trapezoid rule in
    the angle (spectrally accurate for smooth integrands); n = 3 pairs
    Gauss-Legendre in cos(theta) with the trapezoid in phi.
    """
    if n == 1:
        return np.array([[1.0], [-1.0]]), np.array([1.0, 1.0])
    if n == 2:
        mm = 16 * 2 ** level
        phi = 2.0 * math.pi * np.arange(mm) / mm
        dirs = np.stack([np.cos(phi), np.sin(phi)], axis=1)
        return dirs, np.full(mm, 2.0 * math.pi / mm)
    if n == 3:
        kk = 8 * 2 ** level
        c, wc = np.polynomial.legendre.leggauss(kk)
        phi = 2.0 * math.pi * np.arange(2 * kk) / (2 * kk)
        s = np.sqrt(1.0 - c ** 2)
        dirs = []
        wts = []
        for ci, si, wi in zip(c, s, wc):
            for p in phi:
                dirs.append([si * math.cos(p), si * math.sin(p), ci])
                wts.append(wi * math.pi / kk)
        return np.array(dirs), np.array(wts)
    raise DomainError("n must be 1, 2 or 3")


def _field_scale(u):
    if getattr(u, "wavenumber", None):
        return 1.0 / u.wavenumber
    return getattr(u, "sigma", 1.0)


def _stencil_moments(offs, w, qmax):
    return {q: float(np.sum(w * offs.astype(float) ** q))
            for q in range(0, qmax + 1, 2)}


def _radial_singular(u, x, alpha, m, tol, dirs, wts):
    """integral over directions and radii of Delta_2m(r nhat) u(x)
    r^(-1-alpha), for a decaying field.  Returns (value, err)."""
    offs, w = diff_weights(m)
    omega_tot = float(np.sum(wts))
    u0 = float(np.real(u(np.atleast_1d(np.asarray(x, dtype=float)))))

    tiny = tol * 1e-2
    big = u.decay_radius(x, tiny)
    scale = _field_scale(u)

    qmax = 14
    try:
        u.sup_line_deriv(qmax + 2)
    except (NotImplementedError, ValueError):
        qmax = 6

    moments = _stencil_moments(offs, w, qmax + 2)
    # lowest contributing order is 2m; collect series coefficients
    coeffs = {}
    for q in range(2 * m, qmax + 1, 2):
        s_q = moments[q]
        if s_q == 0.0:
            continue
        ang = sum(wts[j] * float(np.real(u.line_deriv(x, dirs[j], q)))
                  for j in range(len(dirs)))
        coeffs[q] = s_q * ang / math.factorial(q)

    # matching radius: Taylor remainder of the stencil below tol
    rs = 0.5 * min(scale, 1.0)
    bound_sup = u.sup_line_deriv(qmax + 2)
    for _ in range(60):
        nxt = (abs(moments[qmax + 2]) * bound_sup * omega_tot
               * rs ** (qmax + 2 - alpha)
               / (math.factorial(qmax + 2) * (qmax + 2 - alpha)))
        if nxt < 0.25 * tol or rs < 1e-4 * scale:
            break
        rs *= 0.5
    inner = sum(c * rs ** (q - alpha) / (q - alpha)
                for q, c in coeffs.items())

    def profile(r):
        r = np.asarray(r, dtype=float)
        acc = 0.0
        for j, d in enumerate(dirs):
            vals = np.real(u.on_ray(x, d, np.multiply.outer(
                offs.astype(float), r)))
            acc = acc + wts[j] * (w @ vals)
        return acc * r ** (-1.0 - alpha)

    body, qerr = integrate_adaptive(profile, rs, big, tol=0.25 * tol,
                                    points=[1.0] if rs < 1.0 < big else [])
    # beyond the decay radius only the central weight survives
    w0 = float(w[offs == 0][0])
    tail = omega_tot * w0 * u0 * big ** (-alpha) / alpha
    err = nxt + qerr + omega_tot * 4.0 ** m * tiny * big ** (-alpha) / alpha
    return inner + body + tail, err


def _angular_loop(compute, n, tol):
    """Evaluate compute(dirs, wts) on refining sphere rules until stable."""
    if n == 1:
        dirs, wts = sphere_rule(1)
        return compute(dirs, wts), 0.0
    prev = None
    for level in range(5):
        dirs, wts = sphere_rule(n, level)
        val = compute(dirs, wts)
        if prev is not None and abs(val - prev) < 0.5 * tol:
            return val, abs(val - prev)
        prev = val
    warnings.warn("angular quadrature did not stabilize; returning anyway")
    return prev, abs(val - prev)


def fl_standard(u, x, alpha, tol=1e-9):
    """Levy-range singular integral form, 0 < alpha < 2."""
    n = u.n
    if not 0.0 < alpha < 2.0:
        raise DomainError(
            "standard form needs 0 < alpha < 2: the kernel moment "
            "r^(2-alpha) diverges outside the Levy range")
    coef = 0.5 * c_standard_levy(n, alpha)
    if isinstance(u, PlaneWave):
        k = u.wavenumber
        vq = v_integral_quadrature(1, alpha, tol=min(tol, 1e-12))
        eig = coef * unit_sphere_moment(n, alpha) * (-(k ** alpha) * vq)
        u0 = u(np.atleast_1d(np.asarray(x, dtype=float)))
        return FLResult(eig * u0, abs(eig) * 1e-11, "standard", alpha, n, 1)

    def compute(dirs, wts):
        val, _ = _radial_singular(u, x, alpha, 1, tol / max(abs(coef), 1e-3),
                                  dirs, wts)
        return val

    val, aerr = _angular_loop(compute, n, tol / max(abs(coef), 1e-3))
    return FLResult(coef * val, abs(coef) * (aerr + tol), "standard",
                    alpha, n, 1)


def fl_order_m(u, x, alpha, m, tol=1e-9):
    """Order-2m difference-kernel form, 0 < alpha < 2m."""
    n = u.n
    nc = norm_constants(m, n, alpha)   # validates 0 < alpha < 2m
    coef = nc.c_general
    if isinstance(u, PlaneWave):
        k = u.wavenumber
        vq = v_integral_quadrature(m, alpha, tol=min(tol, 1e-12))
        eig = coef * nc.u_moment * (-(k ** alpha) * vq)
        u0 = u(np.atleast_1d(np.asarray(x, dtype=float)))
        return FLResult(eig * u0, abs(eig) * 1e-11, "order_m", alpha, n, m)

    def compute(dirs, wts):
        val, _ = _radial_singular(u, x, alpha, m, tol / max(abs(coef), 1e-3),
                                  dirs, wts)
        return val

    val, aerr = _angular_loop(compute, n, tol / max(abs(coef), 1e-3))
    return FLResult(coef * val, abs(coef) * (aerr + tol), "order_m",
                    alpha, n, m)


def _integer_branch(u, x, alpha):
    p = round(alpha / 2.0)
    return (-1.0) ** (p + 1) * u.laplacian_power(x, p)


def fl_regularized(u, x, alpha, spec=None):
    """eps-regularized representation, valid for every alpha >= 0.

    Even integer alpha dispatches to the analytic branch
    (-1)^(p+1) Delta^p u; fractional alpha runs the eps-sequence with
    Richardson extrapolation.
    """
    if alpha < 0.0:
        raise DomainError("alpha must be >= 0")
    if spec is None:
        spec = QuadSpec()
    n = u.n
    half = alpha / 2.0
    dist = abs(half - round(half))
    if dist <= 1e-12:
        return FLResult(_integer_branch(u, x, alpha), 0.0, "regularized",
                        alpha, n, None)
    if dist < 1e-3:
        warnings.warn(
            "alpha within %g of an even integer: the fractional branch is "
            "ill-conditioned there; consider the analytic branch" % dist)

    umom = unit_sphere_moment(n, alpha)
    coef = -2.0 * gamma(alpha + 1.0) / (math.pi * umom)

    if isinstance(u, PlaneWave):
        k = u.wavenumber
        s_val, s_err = _reg_cos_moment(alpha, spec)
        eig = coef * umom * k ** alpha * s_val
        u0 = u(np.atleast_1d(np.asarray(x, dtype=float)))
        return FLResult(eig * u0, abs(coef * umom * k ** alpha) * s_err,
                        "regularized", alpha, n, None)

    scale = _field_scale(u)
    big = u.decay_radius(x, spec.tol * 1e-2)
    myspec = replace(spec, cutoff=big if spec.cutoff is None else spec.cutoff)

    qmax = 14
    try:
        u.sup_line_deriv(qmax)
    except (NotImplementedError, ValueError):
        qmax = 6
    if qmax <= alpha + 1:
        raise DomainError("field cannot supply enough derivative data "
                          "for alpha = %g" % alpha)

    def compute(dirs, wts):
        derivs = {q: sum(wts[j] * float(np.real(u.line_deriv(x, dirs[j], q)))
                         for j in range(len(dirs)))
                  for q in range(0, qmax + 1, 2)}

        def profile(r):
            r = np.asarray(r, dtype=float)
            acc = 0.0
            for j, d in enumerate(dirs):
                acc = acc + wts[j] * np.real(u.on_ray(x, d, r))
            return acc

        val, err = reg_halfline(profile, alpha, myspec, derivs=derivs,
                                tail="decay", scale=scale)
        return val

    val, aerr = _angular_loop(compute, n, spec.tol / max(abs(coef), 1e-3))
    return FLResult(coef * val, abs(coef) * (aerr + spec.tol),
                    "regularized", alpha, n, None)


def _reg_cos_moment(alpha, spec):
    # regularized half-line integral of cos(xi); analytic value
    # pi / (2 Gamma(alpha+1)), but computed here by real quadrature
    derivs = {q: (-1.0) ** (q // 2) for q in range(0, 15, 2)}
    return reg_halfline(lambda x: np.cos(x), alpha, spec, derivs=derivs,
                        tail="cos", scale=1.0, omega=1.0)


def fl_eigenvalue(representation, alpha, k, n=1, m=1, tol=1e-9, spec=None):
    """Plane-wave eigenvalue of the chosen representation at |k| = k.

    Exact answer is -k^alpha; the returned number keeps the quadrature
    content of the representation (the angular factor is analytic), so
    agreement with -k^alpha is a genuine cross-check.
    """
    if k <= 0.0:
        raise DomainError("k must be positive")
    pw = PlaneWave(np.concatenate([[k], np.zeros(n - 1)]))
    x = np.zeros(n)
    if representation == "standard":
        return complex(fl_standard(pw, x, alpha, tol=tol).value).real
    if representation == "order_m":
        return complex(fl_order_m(pw, x, alpha, m, tol=tol).value).real
    if representation == "regularized":
        return complex(fl_regularized(pw, x, alpha, spec=spec).value).real
    raise DomainError("unknown representation %r" % representation)
