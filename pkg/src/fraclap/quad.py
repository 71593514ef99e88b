"""Adaptive quadrature and epsilon-regularized half-line integrals.

The half-line machinery integrates a smooth even profile f against the
kernel Re (eps - i*xi)^(-alpha-1), whose eps -> 0+ limit is the tempered
power -sin(pi*alpha/2) * xi^(-alpha-1).  The integral is assembled from
three pieces so that no region ever suffers the near-origin cancellation
that a direct quadrature of the boundary layer would hit:

  * closed-form moments of the kernel against the Taylor polynomial of f
    on (0, xi_s),
  * ordinary adaptive quadrature on (xi_s, R),
  * an analytic tail beyond R (decaying, constant, or cosine profiles).

Each eps in a halving sequence gives one value; Richardson extrapolation
in eps produces the limit.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np


class QuadratureError(RuntimeError):
    """Requested tolerance not met within the panel budget."""


class ExtrapolationError(RuntimeError):
    """Successive eps-extrapolants fail to contract."""


# 15-point Kronrod rule with the embedded 7-point Gauss rule.
_XK = np.array([
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0,
    0.207784955007898, 0.405845151377397, 0.586087235467691,
    0.741531185599394, 0.864864423359769, 0.949107912342759,
    0.991455371120813,
])
_WK = np.array([
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267,
    0.140653259715525, 0.104790010322250, 0.063092092629979,
    0.022935322010529,
])
_WG = np.array([
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469,
    0.381830050505119, 0.279705391489277, 0.129484966168870,
])
_IG = np.arange(1, 15, 2)   # Gauss nodes sit at the odd Kronrod indices


def _panel(f, a, b):
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    y = np.asarray(f(mid + half * _XK))
    ik = half * (_WK * y).sum()
    ig = half * (_WG * y[_IG]).sum()
    return ik, abs(ik - ig)


def integrate_adaptive(f, lo, hi, tol=1e-10, limit=20000, points=()):
    """Integrate a vectorized callable on (lo, hi), hi may be math.inf.

    Bisects the panel with the largest Kronrod-Gauss error estimate until
    the summed estimate drops below tol (absolute).  Returns (value, err).
    An infinite upper limit is folded to (0, 1) with t -> lo + t/(1-t).
    """
    if math.isinf(hi):
        base = lo

        def g(t):
            t = np.asarray(t)
            return f(base + t / (1.0 - t)) / (1.0 - t) ** 2

        mapped = sorted(set((p - base) / (1.0 + (p - base)) for p in points))
        return integrate_adaptive(g, 0.0, 1.0, tol=tol, limit=limit,
                                  points=mapped)

    cuts = [lo] + sorted(p for p in points if lo < p < hi) + [hi]
    panels = []
    for a, b in zip(cuts[:-1], cuts[1:]):
        ik, err = _panel(f, a, b)
        panels.append((err, a, b, ik))

    while True:
        total = sum(p[3] for p in panels)
        errsum = sum(p[0] for p in panels)
        floor = 50.0 * np.finfo(float).eps * sum(abs(p[3]) for p in panels)
        if errsum <= max(tol, floor):
            return total, errsum
        if len(panels) >= limit:
            raise QuadratureError(
                "tolerance %g not met within %d panels (err=%g)"
                % (tol, limit, errsum))
        panels.sort(key=lambda p: p[0])
        _, a, b, _ = panels.pop()
        m = 0.5 * (a + b)
        if m <= a or m >= b:
            # panel collapsed to rounding width; keep its estimate
            ik, err = _panel(f, a, b)
            panels.append((0.0, a, b, ik))
            continue
        ik, err = _panel(f, a, m)
        panels.append((err, a, m, ik))
        ik, err = _panel(f, m, b)
        panels.append((err, m, b, ik))


@dataclass
class QuadSpec:
    """Controls for the regularized half-line integral.

    eps0 is the largest regularization parameter, halved `levels` times;
    extrap_order caps the Richardson tableau depth; cutoff overrides the
    outer quadrature radius R when set.
    """
    tol: float = 1e-10
    eps0: float = 1e-2
    levels: int = 8
    extrap_order: int = 3
    cutoff: float | None = None


def reg_kernel(xi, alpha, eps):
    """Re (eps - i*xi)^(-alpha-1), the regularized power kernel."""
    if eps <= 0.0:
        raise ValueError("eps must be positive")
    xi = np.asarray(xi, dtype=float)
    rho = np.hypot(eps, xi)
    theta = np.arctan2(-xi, eps)
    return rho ** (-alpha - 1.0) * np.cos((alpha + 1.0) * theta)


def reg_kernel_rotated(xi, alpha, eps):
    """Re { i^(alpha+1) (xi + i*eps)^(-alpha-1) }, equivalent form."""
    if eps <= 0.0:
        raise ValueError("eps must be positive")
    xi = np.asarray(xi, dtype=float)
    z = (xi + 1j * eps) ** (-alpha - 1.0)
    rot = cmath.exp(0.5j * math.pi * (alpha + 1.0))
    return (rot * z).real


# Re(i^p z) for p mod 4 = 0,1,2,3 without going through complex pow,
# so that the purely real lower-boundary terms drop *exactly*.
def _re_rot(p, z):
    p %= 4
    if p == 0:
        return z.real
    if p == 1:
        return -z.imag
    if p == 2:
        return -z.real
    return z.imag


def kernel_moment(q, alpha, eps, cut):
    """Re of the q-th moment of (eps - i*xi)^(-alpha-1) on (0, cut).

    q must be even (odd moments never arise: the profiles integrated here
    are even).  Substituting w = eps - i*xi turns the moment into a finite
    binomial sum whose eps-boundary terms are purely real and are killed
    exactly by the i^(q+1) rotation, so the result is cancellation-free
    even when eps^(-alpha) would overflow the naive route.  eps = 0 gives
    the tempered limit directly.
    """
    if q % 2:
        raise ValueError("only even moments are defined for even profiles")
    if eps < 0.0 or cut <= 0.0:
        raise ValueError("need eps >= 0 and cut > 0")
    w1 = complex(eps, -cut)
    acc = 0j
    for j in range(q + 1):
        c = math.comb(q, j) * (-eps) ** (q - j)
        if c == 0.0:
            continue
        e = j - alpha
        if abs(e) < 1e-13:
            # log branch (alpha an integer <= q); log(eps) is real and
            # would drop from the rotated real part anyway
            acc += c * cmath.log(w1)
        else:
            acc += c * w1 ** e / e
    return _re_rot(q + 1, acc)


def osc_power_tail(omega, lo, s, terms=14):
    """integral_lo^inf cos(omega*xi) xi^(-s) dxi by parts, omega*lo large.

    Returns (value, bound) where bound is the magnitude of the first
    dropped term of the asymptotic series.
    """
    if omega * lo < 4.0 * (s + terms):
        raise ValueError("omega*lo too small for the asymptotic tail")
    total = 0.0
    for sign in (1.0, -1.0):
        w = sign * omega
        val = 0j
        coef = 1.0 + 0j
        p = s
        mag = lo ** (-s)
        for _ in range(terms):
            bterm = -coef * cmath.exp(1j * w * lo) * lo ** (-p) / (1j * w)
            val += bterm
            coef *= p / (1j * w)
            p += 1.0
            mag *= p / (abs(w) * lo)
        total += 0.5 * val.real
    return total, mag / (abs(omega) * lo)


def _osc_tail_reg(omega, lo, alpha, eps, terms=14):
    # integral_lo^inf cos(omega*xi) Re(eps - i*xi)^(-alpha-1) dxi,
    # same integration by parts but with the exact kernel antiderivatives
    total = 0.0
    for sign in (1.0, -1.0):
        w = sign * omega
        val = 0j
        coef = 1.0 + 0j
        beta = alpha + 1.0
        for _ in range(terms):
            z = complex(eps, -lo) ** (-beta)
            val += -coef * cmath.exp(1j * w * lo) * z / (1j * w)
            coef *= -beta / (1j * w) * 1j   # d/dxi (eps-i xi)^-b = i b (...)^-b-1
            beta += 1.0
        total += 0.5 * val.real
    return total


def i_reg(xi0, alpha):
    """Regularized value of the kernel integral over (0, xi0).

    Equals sin(pi*alpha/2) * xi0^(-alpha) / alpha, with the alpha -> 0+
    limit pi/2; vanishes at even integer alpha.
    """
    from .constants import sin_half_pi
    if xi0 <= 0.0:
        raise ValueError("xi0 must be positive")
    if alpha < 0.0:
        raise ValueError("alpha must be >= 0")
    if alpha == 0.0:
        return 0.5 * math.pi
    return sin_half_pi(alpha) / alpha * xi0 ** (-alpha)


def _richardson(values):
    """Richardson tableau for an eps-halving sequence; returns columns."""
    tab = [list(values)]
    k = 1
    while len(tab[-1]) > 1:
        prev = tab[-1]
        fac = 2.0 ** k
        tab.append([(fac * prev[i + 1] - prev[i]) / (fac - 1.0)
                    for i in range(len(prev) - 1)])
        k += 1
    return tab


def reg_halfline(f, alpha, spec=None, derivs=None, tail="decay",
                 scale=1.0, omega=None):
    """eps -> 0+ limit of integral_0^inf f(xi) Re(eps-i*xi)^(-alpha-1) dxi.

    f must be the restriction to (0, inf) of a smooth *even* profile.
    derivs, if given, maps even order q to f^(q)(0) (a dict or callable);
    otherwise low-order values are estimated by central differences of
    the even extension.  tail selects the closure beyond the quadrature
    radius: "decay" (f negligible there), ("const", c) for f -> c, or
    "cos" with omega set for an oscillatory profile f ~ cos(omega*xi).

    Returns (value, error_estimate).
    """
    if spec is None:
        spec = QuadSpec()
    if alpha < 0.0:
        raise ValueError("alpha must be >= 0")

    # Taylor data of the even profile at 0
    if derivs is None:
        derivs = _numeric_even_derivs(f, scale)
    get = derivs if callable(derivs) else derivs.get
    orders = []
    q = 0
    while True:
        v = get(q)
        if v is None:
            break
        orders.append((q, v / math.factorial(q)))
        q += 2
        if q > 16:
            break
    if not orders:
        raise ValueError("need at least f(0)")
    qmax = orders[-1][0]
    if qmax <= alpha:
        raise ValueError("need Taylor data beyond order alpha")

    # inner matching radius: small enough for the Taylor remainder,
    # large enough that the quadrature region never sees the eps layer
    xi_s = 0.25 * scale
    for _ in range(40):
        rem = abs(orders[-1][1]) * xi_s ** (qmax - alpha) / (qmax - alpha)
        if rem < 0.05 * spec.tol or xi_s < 1e-3 * scale:
            break
        xi_s *= 0.5
    eps_list = [spec.eps0 * scale * 0.5 ** j for j in range(spec.levels + 1)]
    if xi_s < 4.0 * eps_list[-1]:
        xi_s = 4.0 * eps_list[-1]

    # outer radius
    if tail == "decay":
        big = spec.cutoff if spec.cutoff is not None else 30.0 * scale
    elif isinstance(tail, tuple) and tail[0] == "const":
        big = spec.cutoff if spec.cutoff is not None else 30.0 * scale
    elif tail == "cos":
        if omega is None or omega <= 0.0:
            raise ValueError("cos tail needs omega > 0")
        big = max(spec.cutoff or 0.0, 80.0 * (alpha + 15.0) / omega,
                  2.0 * xi_s)
    else:
        raise ValueError("unknown tail mode %r" % (tail,))

    inner_tol = 0.1 * spec.tol
    split = [1.0] if xi_s < 1.0 < big else []
    vals = []
    for eps in eps_list:
        mom = sum(c * kernel_moment(q, alpha, eps, xi_s)
                  for q, c in orders)
        mid, _ = integrate_adaptive(
            lambda x: f(x) * reg_kernel(x, alpha, eps),
            xi_s, big, tol=inner_tol, points=split)
        if tail == "cos":
            t = _osc_tail_reg(omega, big, alpha, eps)
        elif isinstance(tail, tuple):
            # the kernel integrates to zero on (0, inf) for every eps
            t = -tail[1] * kernel_moment(0, alpha, eps, big)
        else:
            t = 0.0
        vals.append(mom + mid + t)

    tab = _richardson(vals)
    depth = min(spec.extrap_order, len(tab) - 1)
    best = tab[depth][-1]
    diffs = [abs(tab[depth][i + 1] - tab[depth][i])
             for i in range(len(tab[depth]) - 1)]
    err = diffs[-1] if diffs else 0.0
    err += abs(best - tab[depth - 1][-1]) if depth >= 1 else 0.0
    err += inner_tol * len(eps_list)
    if len(diffs) >= 3 and diffs[-1] > 4.0 * diffs[-3] \
            and diffs[-1] > 1e3 * spec.tol * max(1.0, abs(best)):
        raise ExtrapolationError(
            "eps-extrapolation not contracting (last diffs %g, %g)"
            % (diffs[-3], diffs[-1]))
    return best, err


def _numeric_even_derivs(f, scale):
    # central differences of the even extension, Richardson-refined;
    # enough for the subtraction of a user-supplied profile
    h = 0.05 * scale
    f0 = float(np.asarray(f(np.array([h * 1e-6]))).ravel()[0])
    out = {0: f0}
    sten = {
        2: ([(0, -2.0), (1, 1.0), (-1, 1.0)], 1.0),
        4: ([(0, 6.0), (1, -4.0), (-1, -4.0), (2, 1.0), (-2, 1.0)], 1.0),
        6: ([(0, -20.0), (1, 15.0), (-1, 15.0), (2, -6.0), (-2, -6.0),
             (3, 1.0), (-3, 1.0)], 1.0),
    }
    for q, (st, _) in sten.items():
        ests = []
        for hh in (h, 0.5 * h):
            # evaluate through the even extension |off*hh|
            acc = sum(w * float(np.asarray(
                f(np.array([abs(off) * hh if off else hh * 1e-9]))
            ).ravel()[0]) for off, w in st)
            ests.append(acc / hh ** q)
        out[q] = (4.0 * ests[1] - ests[0]) / 3.0
    return out
