"""Sphere-to-sphere averaging operators and their bilinearizations.

A_t averages a density over the slice {xi . omega = t} with the coarea
weight of the slice measure; T_delta integrates against the kernel
1/(|xi.omega| + delta); S is the L^2-in-t aggregate of A_t.  The
bilinear variants BA_t and BT_delta compose the second density with the
reflection R_omega(xi) = xi - 2 (xi.omega) omega and the involution
g~(xi) = conj(g(-xi)).
"""

import numpy as np

from .errors import InvalidArgumentError, PreconditionError
from .extension import SliceMeasureSpec, extend_slice, slice_circle_points
from .sphere import Density, _as_unit

__all__ = [
    "funk_At",
    "T_delta",
    "t_delta_via_slices",
    "S_operator",
    "BA_t",
    "BT_delta",
    "bt_delta_circle_grid",
    "sphere_autoconvolution",
    "mollified_sphere_convolution",
    "fit_autoconvolution_constant",
    "rotcurv",
    "phi_zero",
]


def funk_At(f, omega, t, n_slice=256):
    """Slice average A_t f(omega): integral of f over {xi.omega = t}.

    A_0 is the Funk transform.  Carries the coarea weight of the slice
    measure, so f = 1 gives the slice mass (2 pi for n = 3,
    2 (1 - t^2)^(-1/2) for n = 2).
    """
    spec = SliceMeasureSpec(_as_unit(omega, "omega"), t)
    val = extend_slice(f, spec, np.zeros(spec.omega.size), n_slice=n_slice)
    if np.isrealobj(f.values) or np.all(f.values.imag == 0):
        return float(val.real)
    return complex(val)


def T_delta(f, omega, delta, support_margin=1e-8):
    """Integral of f(xi) / (|xi.omega| + delta) over the sphere.

    ``delta = 0`` is allowed only when f vanishes on a neighbourhood of
    the equator {xi.omega = 0}; the margin is checked on the grid nodes.
    """
    if delta < 0:
        raise InvalidArgumentError("delta must be >= 0")
    omega = _as_unit(omega, "omega")
    dots = np.abs(f.grid.nodes @ omega)
    if delta == 0:
        live = np.abs(f.values) > 1e-14 * max(np.abs(f.values).max(), 1e-300)
        if np.any(live) and dots[live].min() < support_margin:
            raise PreconditionError(
                "T_0 requires support separated from the equator {xi.omega = 0}")
        kern = np.zeros_like(dots)
        kern[live] = 1.0 / dots[live]
    else:
        kern = 1.0 / (dots + delta)
    val = f.grid.integrate(f.values * kern)
    if np.isrealobj(f.values) or np.all(f.values.imag == 0):
        return float(val.real)
    return complex(val)


def t_delta_via_slices(f, omega, delta, n_u=200, n_slice=256):
    """T_delta computed through the slice reduction.

    Writes T_delta f = integral over t in (-1,1) of A_t f / (|t| + delta),
    substitutes t = sin(theta) and then grades theta logarithmically
    toward the kernel peak at t = 0, so the mesh resolves widths down to
    delta with a node count independent of delta.
    """
    if delta <= 0:
        raise InvalidArgumentError("delta must be positive")
    omega = _as_unit(omega, "omega")
    U = np.log1p((np.pi / 2.0) / delta)
    u, wu = np.polynomial.legendre.leggauss(n_u)
    u = 0.5 * U * (u + 1.0)
    wu = 0.5 * U * wu
    theta = delta * np.expm1(u)
    total = 0.0
    for sign in (1.0, -1.0):
        t = sign * np.sin(theta)
        jac = np.cos(theta) * delta * np.exp(u) / (np.sin(theta) + delta)
        vals = np.array([funk_At(f, omega, tk, n_slice=n_slice) for tk in t])
        total += np.add.reduce(wu * vals * jac)
    return float(total) if np.isscalar(total) or np.isrealobj(np.asarray(total)) \
        else complex(total)


def S_operator(f, omega, n_t=128, n_slice=256):
    """(integral over t in (-1,1) of A_t f(omega)^2)^(1/2) by Gauss-Legendre."""
    omega = _as_unit(omega, "omega")
    t, wt = np.polynomial.legendre.leggauss(n_t)
    vals = np.array([funk_At(f, omega, tk, n_slice=n_slice) for tk in t])
    return float(np.sqrt(np.add.reduce(wt * np.abs(vals) ** 2)))


def _tilde_after_reflection(g, omega, pts):
    """Values of g~(R_omega(xi)) = conj(g(-xi + 2 (xi.omega) omega)) at xi = pts."""
    reflected = pts - 2.0 * (pts @ omega)[:, None] * omega[None, :]
    return np.conj(g.evaluate(-reflected))


def BA_t(g1, g2, omega, t, n_slice=256, method="auto"):
    """Bilinear slice form: slice integral of g1(xi) g2~(R_omega(xi)).

    ``method`` selects the generic slice path ("slice"), the n = 2
    closed two-point form ("closed"), or the fast path when available
    ("auto").  The two paths agree to quadrature accuracy.
    """
    omega = _as_unit(omega, "omega")
    if not abs(t) < 1.0:
        raise InvalidArgumentError("|t| < 1 required")
    n = omega.size
    if method not in ("auto", "slice", "closed"):
        raise InvalidArgumentError(f"unknown method {method!r}")
    if method == "closed" and n != 2:
        raise InvalidArgumentError("closed form is n = 2 only")
    if n == 2 and method in ("auto", "closed"):
        perp = np.array([-omega[1], omega[0]])
        root = np.sqrt(1.0 - t * t)
        p_plus = t * omega + root * perp
        p_minus = t * omega - root * perp
        va = g1.evaluate(np.array([p_plus, p_minus]))
        vb = np.conj(g2.evaluate(np.array([p_minus, p_plus])))
        return complex((va[0] * vb[0] + va[1] * vb[1]) / root)
    if n == 2:
        perp = np.array([-omega[1], omega[0]])
        root = np.sqrt(1.0 - t * t)
        pts = np.array([t * omega + root * perp, t * omega - root * perp])
        vals = g1.evaluate(pts) * _tilde_after_reflection(g2, omega, pts)
        return complex(np.add.reduce(vals) / root)
    pts, _ = slice_circle_points(omega, t, n_slice)
    vals = g1.evaluate(pts) * _tilde_after_reflection(g2, omega, pts)
    return complex(np.add.reduce(vals) * (2.0 * np.pi / n_slice))


def BT_delta(g1, g2, omega, delta):
    """Bilinear T: integral of g1(xi) g2~(R_omega(xi)) / (|xi.omega| + delta)."""
    if delta <= 0:
        raise InvalidArgumentError("delta must be positive")
    omega = _as_unit(omega, "omega")
    pts = g1.grid.nodes
    kern = 1.0 / (np.abs(pts @ omega) + delta)
    vals = g1.values * _tilde_after_reflection(g2, omega, pts)
    return complex(g1.grid.integrate(vals * kern))


def bt_delta_circle_grid(g1, g2, delta):
    """BT_delta(g1, g2) at every node of a shared equispaced circle grid.

    Exploits the n = 2 angle structure: for omega at grid angle phi_k and
    xi at theta_j, the reflected argument -R_omega(xi) sits at the grid
    angle 2 phi_k - theta_j, and the kernel depends only on theta_j - phi_k.
    Matches :func:`BT_delta` evaluated node-by-node.
    """
    if delta <= 0:
        raise InvalidArgumentError("delta must be positive")
    grid = g1.grid
    if grid.dim != 2 or grid.angles is None or g2.grid is not grid:
        raise InvalidArgumentError("both densities must share one circle grid")
    N = grid.node_count
    a = grid.weights * g1.values
    b = np.conj(g2.values)
    kern = 1.0 / (np.abs(np.cos(grid.angles)) + delta)  # index j - k mod N
    j = np.arange(N)
    out = np.empty(N, dtype=complex)
    for k in range(N):
        out[k] = np.add.reduce(a * b[(2 * k - j) % N] * kern[(j - k) % N])
    return out


def sphere_autoconvolution(g1, g2, x, constant=1.0, exclusion_radius=0.05,
                           n_slice=256):
    """(g1 dsigma) * (g2 dsigma)(x) through the bilinear slice form.

    Evaluates constant / |x| * BA_{|x|/2}(g1, g2)(x / |x|).  The constant
    for this package's slice normalisation is 1; callers may pass a
    measured value from :func:`fit_autoconvolution_constant`.
    """
    x = np.asarray(x, dtype=float)
    r = np.linalg.norm(x)
    if not exclusion_radius <= r <= 2.0 - exclusion_radius:
        raise InvalidArgumentError(
            f"|x| = {r:.3g} outside [{exclusion_radius}, {2 - exclusion_radius}]")
    return constant / r * BA_t(g1, g2, x / r, r / 2.0, n_slice=n_slice)


def mollified_sphere_convolution(g1, g2, x, h=0.03):
    """Cross-check oracle for the sphere autoconvolution.

    Replaces the second surface measure by a Gaussian-thickened shell of
    width h and integrates over the first sphere by quadrature:
    sum of w g1(xi) psi_h(|x - xi| - 1) g2((x - xi)/|x - xi|).
    """
    if h <= 0:
        raise InvalidArgumentError("h must be positive")
    x = np.asarray(x, dtype=float)
    diff = x[None, :] - g1.grid.nodes
    dist = np.linalg.norm(diff, axis=1)
    # nodes hit by x exactly contribute psi_h(-1) ~ 0; drop them rather
    # than divide by zero in the direction normalisation
    safe = dist > 1e-12
    dist = np.where(safe, dist, 1.0)
    shell = np.exp(-0.5 * ((dist - 1.0) / h) ** 2) / (np.sqrt(2 * np.pi) * h)
    vals = np.where(safe, g1.values * shell * g2.evaluate(diff / dist[:, None]), 0.0)
    return complex(g1.grid.integrate(vals))


def fit_autoconvolution_constant(g1, g2, radii, direction=None, h=0.03,
                                 n_slice=256):
    """Least-squares fit of the constant linking the BA path to the oracle.

    Returns (constant, max relative residual) over sample points
    r * direction for r in ``radii``.
    """
    n = g1.grid.dim
    if direction is None:
        direction = np.zeros(n)
        direction[0] = 1.0
    direction = _as_unit(direction, "direction")
    ba_vals = []
    oracle_vals = []
    for r in radii:
        x = r * direction
        ba_vals.append((BA_t(g1, g2, direction, r / 2.0, n_slice=n_slice) / r).real)
        oracle_vals.append(mollified_sphere_convolution(g1, g2, x, h=h).real)
    ba_vals = np.asarray(ba_vals)
    oracle_vals = np.asarray(oracle_vals)
    denom = np.add.reduce(ba_vals ** 2)
    if denom == 0:
        raise InvalidArgumentError("BA path vanishes at every sample point")
    c = float(np.add.reduce(ba_vals * oracle_vals) / denom)
    resid = float(np.max(np.abs(c * ba_vals - oracle_vals)
                         / np.maximum(np.abs(oracle_vals), 1e-300)))
    return c, resid


def rotcurv(phi, x, y, step=1e-4):
    """Rotational curvature: the bordered Hessian determinant of phi.

    |det [[phi, grad_x phi], [grad_y phi, d2_{xy} phi]]| assembled from
    central finite differences with the given step.
    """
    if not 1e-6 <= step <= 1e-2:
        raise InvalidArgumentError("step must lie in [1e-6, 1e-2]")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    y = np.atleast_1d(np.asarray(y, dtype=float))
    d = x.size
    if y.size != d:
        raise InvalidArgumentError("x and y must have equal dimension")
    h = step
    M = np.empty((d + 1, d + 1))
    M[0, 0] = phi(x, y)
    eye = np.eye(d)
    for j in range(d):
        M[0, j + 1] = (phi(x + h * eye[j], y) - phi(x - h * eye[j], y)) / (2 * h)
    for i in range(d):
        M[i + 1, 0] = (phi(x, y + h * eye[i]) - phi(x, y - h * eye[i])) / (2 * h)
        for j in range(d):
            M[i + 1, j + 1] = (phi(x + h * eye[j], y + h * eye[i])
                               - phi(x + h * eye[j], y - h * eye[i])
                               - phi(x - h * eye[j], y + h * eye[i])
                               + phi(x - h * eye[j], y - h * eye[i])) / (4 * h * h)
    return float(abs(np.linalg.det(M)))


def phi_zero(n, shift=0.0):
    """The model incidence function whose rotational curvature is 1 at the origin.

    phi(x, y) = sum_{j<n-1} x_j y_j + x_{n-1} sqrt(1-|y|^2)
                + y_{n-1} sqrt(1-|x|^2) - shift, for x, y in R^(n-1).
    """

    def phi(x, y):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        y = np.atleast_1d(np.asarray(y, dtype=float))
        head = np.add.reduce(x[:-1] * y[:-1]) if x.size > 1 else 0.0
        return (head + x[-1] * np.sqrt(1.0 - y @ y)
                + y[-1] * np.sqrt(1.0 - x @ x) - shift)

    return phi
