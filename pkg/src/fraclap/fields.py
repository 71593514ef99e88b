"""Test fields the operators can be applied to.

A field knows how to evaluate itself along rays, supplies analytic
directional derivatives at a point (used for the small-radius series of
the singular integrals), global derivative bounds (used for truncation
estimates), and a decay radius.  Plane waves additionally expose their
wavenumber so the operators can take the analytic angular reduction.
"""

import math

import numpy as np


def hermite_poly(q, t):
    """Physicists' Hermite H_q(t), three-term recursion, vectorized."""
    t = np.asarray(t, dtype=float)
    h0 = np.ones_like(t)
    if q == 0:
        return h0
    h1 = 2.0 * t
    for k in range(1, q):
        h0, h1 = h1, 2.0 * t * h1 - 2.0 * k * h0
    return h1


def _hermite_gauss_sup(q, samples=20001):
    # sup over R of |H_q(t) exp(-t^2)|; the max sits below sqrt(2q)+2
    t = np.linspace(0.0, math.sqrt(2.0 * q + 1.0) + 3.0, samples)
    return float(np.max(np.abs(hermite_poly(q, t)) * np.exp(-t * t))) * 1.01


class Field:
    """Base interface; n is the ambient dimension."""

    n = 1
    wavenumber = None      # set for plane waves

    def __call__(self, pts):
        raise NotImplementedError

    def on_ray(self, x, direction, r):
        """Values u(x + r*direction) for an array of radii r."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        d = np.atleast_1d(np.asarray(direction, dtype=float))
        r = np.asarray(r, dtype=float)
        pts = x[None, :] + r[..., None] * d[None, :]
        return self(pts)

    def line_deriv(self, x, direction, order):
        """d^order/dt^order u(x + t*direction) at t = 0."""
        raise NotImplementedError

    def sup_line_deriv(self, order):
        """Global bound on |d^order/dt^order u| along any ray."""
        raise NotImplementedError

    def laplacian_power(self, x, p):
        """Delta^p u(x), analytic."""
        raise NotImplementedError

    def decay_radius(self, x, tol):
        """Radius beyond which |u(x + r*nhat)| < tol for every direction."""
        raise NotImplementedError


class PlaneWave(Field):
    """u(x) = exp(i k . x); complex-valued, |u| = 1 everywhere."""

    def __init__(self, k):
        k = np.atleast_1d(np.asarray(k, dtype=float))
        self.k = k
        self.n = k.size
        self.wavenumber = float(np.linalg.norm(k))
        if self.wavenumber <= 0.0:
            raise ValueError("plane wave needs a nonzero wavevector")

    def __call__(self, pts):
        pts = np.asarray(pts, dtype=float)
        return np.exp(1j * pts @ self.k)

    def line_deriv(self, x, direction, order):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        d = np.atleast_1d(np.asarray(direction, dtype=float))
        kappa = float(self.k @ d)
        return (1j * kappa) ** order * np.exp(1j * float(self.k @ x))

    def sup_line_deriv(self, order):
        return self.wavenumber ** order

    def laplacian_power(self, x, p):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        return (-self.wavenumber ** 2) ** p * np.exp(1j * float(self.k @ x))

    def decay_radius(self, x, tol):
        raise ValueError("plane waves do not decay; use the spectral path")


class Gaussian(Field):
    """u(x) = exp(-|x - c|^2 / sigma^2), radial and rapidly decaying.

    Along any ray the restriction is a shifted one-dimensional Gaussian,
    so directional derivatives are Hermite closed forms.
    """

    def __init__(self, sigma=1.0, center=0.0, n=1):
        if sigma <= 0.0:
            raise ValueError("sigma must be positive")
        self.sigma = float(sigma)
        c = np.atleast_1d(np.asarray(center, dtype=float))
        if c.size == 1 and n > 1:
            c = np.full(n, float(c[0]))
        self.center = c
        self.n = c.size
        self._sup_cache = {}

    def __call__(self, pts):
        pts = np.asarray(pts, dtype=float)
        d = pts - self.center
        if d.ndim == 1:
            return math.exp(-float(d @ d) / self.sigma ** 2)
        return np.exp(-np.sum(d * d, axis=-1) / self.sigma ** 2)

    def line_deriv(self, x, direction, order):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        d = np.atleast_1d(np.asarray(direction, dtype=float))
        w = x - self.center
        b = float(w @ d)
        perp = float(w @ w) - b * b
        amp = math.exp(-max(perp, 0.0) / self.sigma ** 2)
        t = b / self.sigma
        h = float(hermite_poly(order, np.array([t]))[0])
        return (amp * (-1.0 / self.sigma) ** order * h
                * math.exp(-t * t))

    def sup_line_deriv(self, order):
        if order not in self._sup_cache:
            self._sup_cache[order] = (_hermite_gauss_sup(order)
                                      / self.sigma ** order)
        return self._sup_cache[order]

    def laplacian_power(self, x, p):
        # product of 1-d Gaussians: expand (sum_i d^2/dy_i^2)^p by the
        # multinomial theorem, each factor a Hermite closed form
        x = np.atleast_1d(np.asarray(x, dtype=float))
        t = (x - self.center) / self.sigma
        if p == 0:
            return math.exp(-float(t @ t))
        n = self.n
        total = 0.0
        for combo in _compositions(p, n):
            coef = math.factorial(p)
            for c in combo:
                coef //= math.factorial(c)
            term = coef
            for ti, ci in zip(t, combo):
                term *= (self.sigma ** (-2 * ci)
                         * float(hermite_poly(2 * ci, np.array([ti]))[0])
                         * math.exp(-ti * ti))
            total += term
        return total

    def decay_radius(self, x, tol):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        off = float(np.linalg.norm(x - self.center))
        return off + self.sigma * math.sqrt(max(math.log(1.0 / tol), 1.0)) + self.sigma


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


class UserField(Field):
    """Wrap a plain callable; derivative data falls back to differences.

    The callable receives an (..., n) array of points.  A decay radius
    function (or constant) must be declared: the singular integrals need
    a certified truncation radius.
    """

    def __init__(self, fn, n=1, decay_radius=None, deriv_bound=None):
        self.fn = fn
        self.n = n
        self._decay = decay_radius
        self._bound = deriv_bound

    def __call__(self, pts):
        return self.fn(np.asarray(pts, dtype=float))

    def line_deriv(self, x, direction, order):
        if order == 0:
            return float(self.on_ray(x, direction, np.array([0.0]))[0])
        if order > 6 or order % 2:
            raise NotImplementedError(
                "numeric line derivatives available for even orders <= 6")
        stencils = {
            2: [(-1, 1.0), (0, -2.0), (1, 1.0)],
            4: [(-2, 1.0), (-1, -4.0), (0, 6.0), (1, -4.0), (2, 1.0)],
            6: [(-3, 1.0), (-2, -6.0), (-1, 15.0), (0, -20.0),
                (1, 15.0), (2, -6.0), (3, 1.0)],
        }
        ests = []
        for h in (0.05, 0.025):
            offs = np.array([o * h for o, _ in stencils[order]])
            vals = self.on_ray(x, direction, offs)
            acc = sum(w * v for (_, w), v in zip(stencils[order], vals))
            ests.append(acc / h ** order)
        return (4.0 * ests[1] - ests[0]) / 3.0

    def sup_line_deriv(self, order):
        if self._bound is None:
            raise ValueError("user field needs a deriv_bound callable")
        return self._bound(order)

    def decay_radius(self, x, tol):
        if self._decay is None:
            raise ValueError("user field must declare its decay radius")
        if callable(self._decay):
            return self._decay(x, tol)
        return float(self._decay)
