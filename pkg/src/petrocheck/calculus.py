"""Closed-form radial calculus for the p-parabolic equation du/dt = Lap_p u.

The p-Laplacian of a radially symmetric function u(r), r = |x| in R^n, is

    Lap_p u = r^(1-n) d/dr ( r^(n-1) |u_r|^(p-2) u_r ),

obtained by writing Div(|grad u|^(p-2) grad u) for u = u(|x|):
grad u = u_r x/r, |grad u| = |u_r|, and Div(g(r) x) = n g + r g'.
Expanding the outer derivative gives the equivalent non-conservative form

    Lap_p u = (p-1) |u_r|^(p-2) u_rr + (n-1)/r |u_r|^(p-2) u_r,

which is what `residual` uses when closed-form derivatives are attached.
Everything here is pure and reentrant; functions accept numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import DomainError

__all__ = [
    "Params",
    "SpaceTimeFunction",
    "lambda_of",
    "p_laplacian_radial_power",
    "p_laplacian_radial_fd",
    "barenblatt",
    "barenblatt_function",
    "barenblatt_support_radius",
    "residual",
    "check_derivatives",
]


def lambda_of(p: float, n: int) -> float:
    """Self-similarity scale exponent n(p-2) + p."""
    if p <= 1:
        raise DomainError(f"p must exceed 1, got p={p}")
    if n < 1:
        raise DomainError(f"n must be a positive integer, got n={n}")
    return n * (p - 2.0) + p


@dataclass(frozen=True)
class Params:
    """Problem parameters with derived exponents.

    p : diffusion exponent, > 1 (degenerate for p > 2, singular for p < 2)
    n : spatial dimension, >= 1
    q : cusp width exponent (> 0) for power profiles, optional
    K : cusp width amplitude (> 0), optional
    t0 : start time, < 0
    """

    p: float
    n: int
    q: Optional[float] = None
    K: Optional[float] = None
    t0: float = -1.0

    def __post_init__(self):
        if self.p <= 1:
            raise DomainError(f"p must exceed 1, got p={self.p}")
        if self.n < 1 or int(self.n) != self.n:
            raise DomainError(f"n must be a positive integer, got n={self.n}")
        if self.t0 >= 0:
            raise DomainError(f"t0 must be negative, got t0={self.t0}")
        if self.q is not None and self.q <= 0:
            raise DomainError(f"q must be positive, got q={self.q}")
        if self.K is not None and self.K <= 0:
            raise DomainError(f"K must be positive, got K={self.K}")

    @property
    def lam(self) -> float:
        return lambda_of(self.p, self.n)

    @property
    def alpha(self) -> float:
        """p/(p-2); the radial power with r-homogeneous p-Laplacian (p != 2)."""
        if self.p == 2:
            raise DomainError("alpha = p/(p-2) is undefined at p = 2")
        return self.p / (self.p - 2.0)

    @property
    def beta(self) -> float:
        """n(p-2)/lambda, the gauge monotonization weight."""
        return self.n * (self.p - 2.0) / self.lam

    @property
    def gamma(self) -> float:
        """beta/(p-1) < beta; exponent in the vanishing-gauge criterion."""
        return self.beta / (self.p - 1.0)

    def require_barenblatt_scale(self):
        if self.lam <= 0:
            raise DomainError(
                f"lambda = n(p-2)+p = {self.lam} must be positive "
                f"(needs p > 2n/(n+1) for p < 2)"
            )


@dataclass(frozen=True)
class SpaceTimeFunction:
    """An evaluable radial scalar field u(r, t) with optional closed forms.

    fn evaluates the field; dt, dr, drr are closed-form time/radial
    derivatives when available (all vectorized over numpy arrays).
    in_domain, when given, is the validity predicate of the formulas.
    """

    fn: Callable
    dt: Optional[Callable] = None
    dr: Optional[Callable] = None
    drr: Optional[Callable] = None
    label: str = ""
    in_domain: Optional[Callable] = None
    meta: dict = field(default_factory=dict)

    def __call__(self, r, t):
        return self.fn(r, t)

    @property
    def has_closed_derivatives(self) -> bool:
        return self.dt is not None and self.dr is not None and self.drr is not None


def _phi(s, p, eps=0.0):
    """Degenerate flux |s|^(p-2) s, optionally regularized to (s^2+eps^2)^((p-2)/2) s."""
    s = np.asarray(s, dtype=float)
    if eps == 0.0:
        return np.sign(s) * np.abs(s) ** (p - 1.0)
    return (s * s + eps * eps) ** ((p - 2.0) / 2.0) * s


def p_laplacian_radial_power(C: float, alpha: float, p: float, n: int, r) -> np.ndarray:
    """p-Laplacian of C |x|^alpha in R^n, evaluated at |x| = r.

    Closed form: C alpha |C alpha|^(p-2) (n + (alpha-1)(p-1) - 1) r^((alpha-1)(p-1)-1).
    For alpha = p/(p-2) and C alpha > 0 this reduces to
    (C alpha)^(p-1) (n + alpha) r^alpha = (C alpha)^(p-1) lambda/(p-2) r^alpha,
    and for alpha = p/(p-1), C > 0, to the r-independent constant (C alpha)^(p-1) n.
    """
    if p <= 1:
        raise DomainError(f"p must exceed 1, got p={p}")
    if n < 1:
        raise DomainError(f"n must be a positive integer, got n={n}")
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise DomainError("radius must be nonnegative")
    if C == 0.0 or alpha == 0.0:
        out = np.zeros_like(r)
        return out if out.ndim else float(out)
    expo = (alpha - 1.0) * (p - 1.0) - 1.0
    if expo < 0 and np.any(r == 0.0):
        raise DomainError(
            f"output exponent {expo} is negative; r must be strictly positive"
        )
    ca = C * alpha
    coeff = ca * abs(ca) ** (p - 2.0) * (n + expo)
    out = coeff * r ** expo
    return out if out.ndim else float(out)


def p_laplacian_radial_fd(
    u, p: float, n: int, r: float, t: float, h: float = 1e-4, eps: float = 0.0
) -> float:
    """Second-order conservative finite-difference oracle for Lap_p u at (r, t).

    Discretizes r^(1-n) d/dr ( r^(n-1) |u_r|^(p-2) u_r ) with centered slopes
    at the half points r +- h/2.  Independent of any closed form attached to u.
    The regularization eps (used as (s^2+eps^2)^((p-2)/2)) is meant for p < 2
    when the sampled slope may vanish; default 0 keeps the flux exact.
    Meaningless at points where u is not smooth; the caller must keep h < r/2.
    """
    if not (0 < h < r / 2):
        raise DomainError(f"need 0 < h < r/2, got h={h}, r={r}")
    fn = u.fn if isinstance(u, SpaceTimeFunction) else u
    up, u0, um = fn(r + h, t), fn(r, t), fn(r - h, t)
    s_plus = (up - u0) / h
    s_minus = (u0 - um) / h
    f_plus = (r + h / 2.0) ** (n - 1) * _phi(s_plus, p, eps)
    f_minus = (r - h / 2.0) ** (n - 1) * _phi(s_minus, p, eps)
    return float(r ** (1 - n) * (f_plus - f_minus) / h)


def barenblatt_support_radius(t: float, p: float, n: int, C: float) -> float:
    """Free-boundary radius of the self-similar source solution at time t > 0.

    Finite only for p > 2; for p < 2 the profile is positive everywhere and
    +inf is returned.
    """
    lam = lambda_of(p, n)
    if lam <= 0 or p == 2:
        raise DomainError("requires lambda > 0 and p != 2")
    if t <= 0:
        raise DomainError("requires t > 0")
    if p < 2:
        return math.inf
    b = (p - 2.0) / p * lam ** (1.0 / (1.0 - p))
    return t ** (1.0 / lam) * (C / b) ** ((p - 1.0) / p)


def barenblatt(r, t, p: float, n: int, C: float):
    """Self-similar source solution at radius r, time t > 0.

    B(r, t) = t^(-n/lam) ( C - (p-2)/p lam^(1/(1-p)) (r/t^(1/lam))^(p/(p-1)) )_+^((p-1)/(p-2))

    with lam = n(p-2)+p.  Requires p != 2 and lam > 0; the positive part
    clamps the profile to zero outside its support when p > 2.
    """
    if p == 2:
        raise DomainError("p = 2 (Gaussian kernel) is unsupported")
    if C <= 0:
        raise DomainError(f"C must be positive, got {C}")
    lam = lambda_of(p, n)
    if lam <= 0:
        raise DomainError(f"lambda = {lam} must be positive")
    r = np.asarray(r, dtype=float)
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0):
        raise DomainError("requires t > 0")
    b = (p - 2.0) / p * lam ** (1.0 / (1.0 - p))
    xi = (r / t ** (1.0 / lam)) ** (p / (p - 1.0))
    base = C - b * xi
    m = (p - 1.0) / (p - 2.0)
    if p > 2:
        out = t ** (-n / lam) * np.where(base > 0.0, np.abs(base) ** m, 0.0)
    else:
        # base >= C > 0 always (b < 0); no clamping occurs
        out = t ** (-n / lam) * base ** m
    return out if out.ndim else float(out)


def barenblatt_function(p: float, n: int, C: float) -> SpaceTimeFunction:
    """Source solution as a SpaceTimeFunction with closed-form derivatives.

    Derivatives are valid in the interior of the support only; points on or
    beyond the free boundary (p > 2) are not smooth and report value 0 with
    zero derivatives.
    """
    lam = lambda_of(p, n)
    if lam <= 0 or p == 2 or C <= 0:
        raise DomainError("requires p != 2, lambda > 0 and C > 0")
    b = (p - 2.0) / p * lam ** (1.0 / (1.0 - p))
    m = (p - 1.0) / (p - 2.0)
    pp = p / (p - 1.0)

    def pieces(r, t):
        r = np.asarray(r, dtype=float)
        t = np.asarray(t, dtype=float)
        xi = r ** pp * t ** (-pp / lam)
        base = C - b * xi
        return r, t, xi, base

    def fn(r, t):
        return barenblatt(r, t, p, n, C)

    def inside(base):
        return base > 0.0 if p > 2 else np.ones_like(base, dtype=bool)

    def dt(r, t):
        r, t, xi, base = pieces(r, t)
        msk = inside(base)
        basem = np.where(msk, base, 1.0)
        dxi_dt = -(pp / lam) * xi / t
        val = (
            -(n / lam) * t ** (-n / lam - 1.0) * basem ** m
            + t ** (-n / lam) * m * basem ** (m - 1.0) * (-b) * dxi_dt
        )
        out = np.where(msk, val, 0.0)
        return out if out.ndim else float(out)

    def dr(r, t):
        r, t, xi, base = pieces(r, t)
        msk = inside(base)
        basem = np.where(msk, base, 1.0)
        dxi_dr = pp * r ** (pp - 1.0) * t ** (-pp / lam)
        val = t ** (-n / lam) * m * basem ** (m - 1.0) * (-b) * dxi_dr
        out = np.where(msk, val, 0.0)
        return out if out.ndim else float(out)

    def drr(r, t):
        r, t, xi, base = pieces(r, t)
        msk = inside(base)
        basem = np.where(msk, base, 1.0)
        dxi_dr = pp * r ** (pp - 1.0) * t ** (-pp / lam)
        d2xi_dr2 = pp * (pp - 1.0) * r ** (pp - 2.0) * t ** (-pp / lam)
        val = t ** (-n / lam) * m * (-b) * (
            (m - 1.0) * basem ** (m - 2.0) * (-b) * dxi_dr ** 2
            + basem ** (m - 1.0) * d2xi_dr2
        )
        out = np.where(msk, val, 0.0)
        return out if out.ndim else float(out)

    return SpaceTimeFunction(
        fn=fn,
        dt=dt,
        dr=dr,
        drr=drr,
        label=f"barenblatt(p={p}, n={n}, C={C})",
        in_domain=lambda r, t: np.asarray(t) > 0,
        meta={"p": p, "n": n, "C": C, "lambda": lam},
    )


def residual(
    u: SpaceTimeFunction,
    p: float,
    n: int,
    r,
    t,
    method: str = "auto",
    h: float = 1e-4,
    eps: float = 0.0,
):
    """Pointwise residual du/dt - Lap_p u of a smooth radial field.

    A nonnegative value indicates supersolution behavior at the point.
    method="closed" uses attached dt/dr/drr (vectorized and exact up to
    roundoff); method="fd" uses central differences for du/dt and the
    conservative oracle for Lap_p; "auto" prefers closed forms.
    """
    if u.in_domain is not None and not np.all(u.in_domain(r, t)):
        raise DomainError(f"evaluation outside the domain of {u.label!r}")
    if method == "auto":
        method = "closed" if u.has_closed_derivatives else "fd"
    if method == "closed":
        if not u.has_closed_derivatives:
            raise DomainError(f"{u.label!r} has no closed-form derivatives")
        r = np.asarray(r, dtype=float)
        t = np.asarray(t, dtype=float)
        ur = np.asarray(u.dr(r, t), dtype=float)
        urr = np.asarray(u.drr(r, t), dtype=float)
        flat = (ur == 0.0) & (urr == 0.0)  # locally constant branch: Lap_p = 0
        with np.errstate(divide="ignore", invalid="ignore"):
            if eps == 0.0:
                grad = np.where(flat, 0.0, np.abs(ur) ** (p - 2.0))
            else:
                grad = (ur * ur + eps * eps) ** ((p - 2.0) / 2.0)
            lap = (p - 1.0) * grad * urr + (n - 1.0) / r * grad * ur
        lap = np.where(flat, 0.0, lap)
        out = np.asarray(u.dt(r, t), dtype=float) - lap
        return out if out.ndim else float(out)
    if method == "fd":
        rs = np.atleast_1d(np.asarray(r, dtype=float))
        ts = np.atleast_1d(np.asarray(t, dtype=float))
        rs, ts = np.broadcast_arrays(rs, ts)
        out = np.empty(rs.shape)
        it = np.nditer(rs, flags=["multi_index"])
        for _ in it:
            idx = it.multi_index
            ri, ti = float(rs[idx]), float(ts[idx])
            ht = h * max(abs(ti), 1.0)
            dtu = (u.fn(ri, ti + ht) - u.fn(ri, ti - ht)) / (2.0 * ht)
            lap = p_laplacian_radial_fd(u, p, n, ri, ti, h=min(h, ri / 4.0), eps=eps)
            out[idx] = dtu - lap
        return out if np.ndim(r) or np.ndim(t) else float(out.reshape(-1)[0])
    raise ValueError(f"unknown method {method!r}")


def check_derivatives(u: SpaceTimeFunction, points, h: float = 1e-4) -> float:
    """Max relative deviation of attached dt/dr from central differences.

    points is an iterable of (r, t) interior sample points.  Returns the
    worst relative error over both derivatives; callers assert it <= 1e-6.
    """
    worst = 0.0
    for r, t in points:
        ht = h * abs(t) if t != 0 else h
        hr = h * r if r > 0 else h
        if u.dt is not None:
            fd = (u.fn(r, t + ht) - u.fn(r, t - ht)) / (2.0 * ht)
            cf = float(u.dt(r, t))
            worst = max(worst, abs(cf - fd) / (1.0 + abs(cf)))
        if u.dr is not None and r > 0:
            fd = (u.fn(r + hr, t) - u.fn(r - hr, t)) / (2.0 * hr)
            cf = float(u.dr(r, t))
            worst = max(worst, abs(cf - fd) / (1.0 + abs(cf)))
    return worst
