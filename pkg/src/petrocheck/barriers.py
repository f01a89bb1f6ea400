"""Explicit barrier constructions on cusp domains, with exact derivatives.

Five closed-form constructions are provided, each returned as a
SpaceTimeFunction whose dt/dr/drr are analytic (so pointwise residuals
du/dt - Lap_p u can be certified to roundoff):

singular_irregularity   1 < p < 2, 0 < q < 1/p: a supersolution whose value
                        along the axis tends to 0 while its boundary datum at
                        the tip is 1, witnessing irregularity of the tip.
singular_traditional    1 < p < 2, 0 < q <= 1/p: the pasted min{v, M} barrier
                        that vanishes at the tip even when the tip is
                        irregular (one barrier does not imply regularity).
degenerate_irregularity p > 2 on the reference cusp |x| < (-t)^(1/p): the
                        supersolution C (|x|^p/(-t))^(1/(p-2)) vanishing on
                        the axis, admissible for C <= c_max(p, n).
degenerate_family_member p > 2: the gauge-driven family
                        w_C = (Q^((p-1)/(p-2)) - C^((p-1)/(p-2))) f + rho_C
                        indexed by C, a barrier family at the tip once C is
                        large enough (find_family_threshold).
degenerate_small_data   p > 2, 0 < b < pq <= 1: A (|x|^p/(-t)^b)^(1/(p-2)),
                        continuous up to the tip, giving attainment for
                        boundary data within +-u of their tip value.

All exponent algebra matches the radial-power formula in `calculus`; the
reference domains (K = 1, t0 = -1 unless stated) are attached for
certification.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .calculus import Params, SpaceTimeFunction, lambda_of
from .domains import DomainProfile, Gauge, make_profile
from .errors import DomainError

__all__ = [
    "BarrierSpec",
    "BARRIER_KINDS",
    "singular_irregularity_barrier",
    "singular_traditional_barrier",
    "small_data_bound_g",
    "degenerate_irregularity_barrier",
    "degenerate_family_member",
    "degenerate_small_data_barrier",
    "b_const",
    "m_const",
    "c_max",
    "small_data_amplitude",
    "find_family_threshold",
    "elementary_inequality_margin",
    "make_barrier",
]

BARRIER_KINDS = (
    "singular_irregularity",
    "singular_traditional",
    "degenerate_family_member",
    "degenerate_irregularity",
    "degenerate_small_data",
)


def _check_singular(p, q, strict_q=False):
    if not (1 < p < 2):
        raise DomainError(f"requires 1 < p < 2, got p={p}")
    if strict_q:
        if not (0 < q < 1.0 / p):
            raise DomainError(f"requires 0 < q < 1/p = {1.0 / p}, got q={q}")
    else:
        if not (0 < q <= 1.0 / p):
            raise DomainError(f"requires 0 < q <= 1/p = {1.0 / p}, got q={q}")


def b_const(p: float, n: int) -> float:
    """Coefficient clamp B = min{ n(2-p) (p/(p-1))^(p-1), 1 } for 1 < p < 2."""
    if not (1 < p < 2):
        raise DomainError(f"requires 1 < p < 2, got p={p}")
    if n < 1:
        raise DomainError(f"n must be a positive integer, got n={n}")
    return min(n * (2.0 - p) * (p / (p - 1.0)) ** (p - 1.0), 1.0)


def m_const(p: float, q: float, n: int) -> float:
    """Pasting level M = (B/2)^(1 + (p-1)/(pq(2-p))) of the traditional barrier."""
    _check_singular(p, q)
    B = b_const(p, n)
    return (B / 2.0) ** (1.0 + (p - 1.0) / (p * q * (2.0 - p)))


def c_max(p: float, n: int) -> float:
    """Largest admissible coefficient of the degenerate irregularity barrier.

    c_max = ( (p-2)^(p-1) / (lam p^(p-1)) )^(1/(p-2)), lam = n(p-2)+p.
    """
    if p <= 2:
        raise DomainError(f"requires p > 2, got p={p}")
    lam = lambda_of(p, n)
    return ((p - 2.0) ** (p - 1.0) / (lam * p ** (p - 1.0))) ** (1.0 / (p - 2.0))


def small_data_amplitude(p: float, n: int, beta: float) -> float:
    """Amplitude A = ( (beta/lam) (1 - 2/p)^(p-1) )^(1/(p-2)) of the small-data barrier."""
    if p <= 2:
        raise DomainError(f"requires p > 2, got p={p}")
    if beta <= 0:
        raise DomainError(f"requires beta > 0, got {beta}")
    lam = lambda_of(p, n)
    return ((beta / lam) * (1.0 - 2.0 / p) ** (p - 1.0)) ** (1.0 / (p - 2.0))


def elementary_inequality_margin(alpha: float, s):
    """Positive gap 1 + alpha s (1+s)^(alpha-1) - (1+s)^alpha for alpha > 1, s > 0."""
    s = np.asarray(s, dtype=float)
    return 1.0 + alpha * s * (1.0 + s) ** (alpha - 1.0) - (1.0 + s) ** alpha


def singular_irregularity_barrier(p: float, q: float, n: int) -> SpaceTimeFunction:
    """Irregularity witness for 1 < p < 2, 0 < q < 1/p on the cusp |x| < K(-t)^q.

    u(r, t) = r^(p/(p-1)) / (-t)^(pq/(p-1))
              - n/(1-pq) (p/(p-1))^(p-1) (-t)^(1-pq),         u(0, 0) = 1.

    Supersolution in the cusp: du/dt - Lap_p u
    = pq/(p-1) r^(p/(p-1)) (-t)^(-1-pq/(p-1)) >= 0, vanishing only on the
    axis, while u(0, t) -> 0 as t -> 0-.
    """
    _check_singular(p, q, strict_q=True)
    if n < 1:
        raise DomainError(f"n must be a positive integer, got n={n}")
    pp = p / (p - 1.0)
    a = p * q / (p - 1.0)
    c2 = n / (1.0 - p * q) * (p / (p - 1.0)) ** (p - 1.0)

    def fn(r, t):
        r = np.asarray(r, dtype=float)
        t = np.asarray(t, dtype=float)
        tip = (r == 0.0) & (t == 0.0)
        tt = np.where(tip, -1.0, t)
        val = r ** pp * (-tt) ** (-a) - c2 * (-tt) ** (1.0 - p * q)
        out = np.where(tip, 1.0, val)
        return out if out.ndim else float(out)

    def dt(r, t):
        r = np.asarray(r, dtype=float)
        t = np.asarray(t, dtype=float)
        return a * r ** pp * (-t) ** (-a - 1.0) + c2 * (1.0 - p * q) * (-t) ** (-p * q)

    def dr(r, t):
        r = np.asarray(r, dtype=float)
        t = np.asarray(t, dtype=float)
        return pp * r ** (pp - 1.0) * (-t) ** (-a)

    def drr(r, t):
        r = np.asarray(r, dtype=float)
        t = np.asarray(t, dtype=float)
        return pp * (pp - 1.0) * r ** (pp - 2.0) * (-t) ** (-a)

    return SpaceTimeFunction(
        fn=fn, dt=dt, dr=dr, drr=drr,
        label=f"singular-irregularity(p={p}, q={q}, n={n})",
        meta={"p": p, "q": q, "n": n, "tip_value": 1.0},
    )


def singular_traditional_barrier(p: float, q: float, n: int) -> SpaceTimeFunction:
    """Pasted traditional barrier min{v, M} for 1 < p < 2, 0 < q <= 1/p, K = 1.

    v(r, t) = (-t)^(1/(2-p)) (B - r^(p/(p-1))) is a supersolution on the whole
    cusp; u equals min{v, M} on the core r^(p/(p-1)) < B/2 and the constant M
    outside it, which is continuous because v >= M on the core's lateral
    boundary inside the cusp.  Derivatives are branch-wise (the constant
    branch contributes zero residual); the pasting itself is classical and
    is not re-derived here.
    """
    _check_singular(p, q)
    if n < 1:
        raise DomainError(f"n must be a positive integer, got n={n}")
    pp = p / (p - 1.0)
    c = 1.0 / (2.0 - p)
    B = b_const(p, n)
    M = m_const(p, q, n)

    def _branches(r, t):
        r = np.asarray(r, dtype=float)
        t = np.asarray(t, dtype=float)
        core = r ** pp < B / 2.0
        v = (-t) ** c * (B - r ** pp)
        active = core & (v < M)
        return r, t, v, core, active

    def fn(r, t):
        r, t, v, core, _ = _branches(r, t)
        out = np.where(core, np.minimum(v, M), M)
        return out if out.ndim else float(out)

    def dt(r, t):
        r, t, v, core, active = _branches(r, t)
        vt = -c * (-t) ** (c - 1.0) * (B - r ** pp)
        out = np.where(active, vt, 0.0)
        return out if out.ndim else float(out)

    def dr(r, t):
        r, t, v, core, active = _branches(r, t)
        vr = -(-t) ** c * pp * r ** (pp - 1.0)
        out = np.where(active, vr, 0.0)
        return out if out.ndim else float(out)

    def drr(r, t):
        r, t, v, core, active = _branches(r, t)
        vrr = -(-t) ** c * pp * (pp - 1.0) * r ** (pp - 2.0)
        out = np.where(active, vrr, 0.0)
        return out if out.ndim else float(out)

    return SpaceTimeFunction(
        fn=fn, dt=dt, dr=dr, drr=drr,
        label=f"singular-traditional(p={p}, q={q}, n={n})",
        meta={"p": p, "q": q, "n": n, "B": B, "M": M},
    )


def small_data_bound_g(p: float, q: float, n: int) -> SpaceTimeFunction:
    """Smallness bound g(t) = (B/2) min{-t, (B/2)^((p-1)/pq)}^(1/(2-p)).

    Boundary data within +-g of the tip value are attained at the tip even
    though the cusp is irregular.  g depends on t only and is constant for
    -t beyond the clamp threshold.
    """
    _check_singular(p, q)
    B = b_const(p, n)
    thr = (B / 2.0) ** ((p - 1.0) / (p * q))
    c = 1.0 / (2.0 - p)

    def fn(r, t):
        t = np.asarray(t, dtype=float)
        val = (B / 2.0) * np.minimum(-t, thr) ** c
        out = val + 0.0 * np.asarray(r, dtype=float)
        return out if out.ndim else float(out)

    def dt(r, t):
        t = np.asarray(t, dtype=float)
        unclamped = (-t) < thr
        val = np.where(unclamped, -(B / 2.0) * c * (-t) ** (c - 1.0), 0.0)
        out = val + 0.0 * np.asarray(r, dtype=float)
        return out if out.ndim else float(out)

    zero = lambda r, t: np.zeros(np.broadcast(np.asarray(r), np.asarray(t)).shape)
    return SpaceTimeFunction(
        fn=fn, dt=dt, dr=zero, drr=zero,
        label=f"small-data-bound(p={p}, q={q}, n={n})",
        meta={"p": p, "q": q, "n": n, "B": B, "clamp_threshold": thr},
    )


def degenerate_irregularity_barrier(p: float, n: int, C: float) -> SpaceTimeFunction:
    """Irregularity witness C (|x|^p / (-t))^(1/(p-2)) for p > 2.

    A positive supersolution on the reference cusp |x| < (-t)^(1/p) provided

        0 < C^(p-2) <= (p-2)^(p-1) / (lam p^(p-1)),

    i.e. C <= c_max(p, n); larger C is rejected.  Vanishes identically on
    the axis while the induced boundary datum equals C at the tip.
    """
    if p <= 2:
        raise DomainError(f"requires p > 2, got p={p}")
    if n < 1:
        raise DomainError(f"n must be a positive integer, got n={n}")
    cm = c_max(p, n)
    if not (0 < C <= cm * (1.0 + 1e-12)):
        raise DomainError(
            f"C={C} violates the supersolution bound 0 < C <= c_max = {cm!r} "
            f"(C^(p-2) <= (p-2)^(p-1)/(lam p^(p-1)))"
        )
    alpha = p / (p - 2.0)
    b = 1.0 / (p - 2.0)

    def fn(r, t):
        r = np.asarray(r, dtype=float)
        t = np.asarray(t, dtype=float)
        return C * r ** alpha * (-t) ** (-b)

    def dt(r, t):
        r = np.asarray(r, dtype=float)
        t = np.asarray(t, dtype=float)
        return C * b * r ** alpha * (-t) ** (-b - 1.0)

    def dr(r, t):
        r = np.asarray(r, dtype=float)
        t = np.asarray(t, dtype=float)
        return C * alpha * r ** (alpha - 1.0) * (-t) ** (-b)

    def drr(r, t):
        r = np.asarray(r, dtype=float)
        t = np.asarray(t, dtype=float)
        return C * alpha * (alpha - 1.0) * r ** (alpha - 2.0) * (-t) ** (-b)

    return SpaceTimeFunction(
        fn=fn, dt=dt, dr=dr, drr=drr,
        label=f"degenerate-irregularity(p={p}, n={n}, C={C})",
        meta={"p": p, "n": n, "C": C, "c_max": cm, "tip_value": C},
    )


def degenerate_small_data_barrier(p: float, q: float, n: int, beta: float) -> SpaceTimeFunction:
    """Small-data attainment barrier A (|x|^p/(-t)^beta)^(1/(p-2)) for p > 2.

    Requires 0 < beta < pq <= 1 so that the function is continuous on the
    closed cusp |x| < (-t)^q, -1 < t < 0, with value 0 at the tip; beta >= pq
    is rejected (continuity at the origin would fail).
    """
    if p <= 2:
        raise DomainError(f"requires p > 2, got p={p}")
    if not (0 < q <= 1.0 / p):
        raise DomainError(f"requires 0 < q <= 1/p = {1.0 / p}, got q={q}")
    if not (0 < beta < p * q):
        raise DomainError(
            f"beta={beta} must lie in (0, pq) = (0, {p * q}); "
            f"beta >= pq makes the barrier discontinuous at the origin"
        )
    A = small_data_amplitude(p, n, beta)
    alpha = p / (p - 2.0)
    b = beta / (p - 2.0)

    def fn(r, t):
        r = np.asarray(r, dtype=float)
        t = np.asarray(t, dtype=float)
        tip = (r == 0.0) & (t == 0.0)
        tt = np.where(tip, -1.0, t)
        out = np.where(tip, 0.0, A * r ** alpha * (-tt) ** (-b))
        return out if out.ndim else float(out)

    def dt(r, t):
        r = np.asarray(r, dtype=float)
        t = np.asarray(t, dtype=float)
        return A * b * r ** alpha * (-t) ** (-b - 1.0)

    def dr(r, t):
        r = np.asarray(r, dtype=float)
        t = np.asarray(t, dtype=float)
        return A * alpha * r ** (alpha - 1.0) * (-t) ** (-b)

    def drr(r, t):
        r = np.asarray(r, dtype=float)
        t = np.asarray(t, dtype=float)
        return A * alpha * (alpha - 1.0) * r ** (alpha - 2.0) * (-t) ** (-b)

    return SpaceTimeFunction(
        fn=fn, dt=dt, dr=dr, drr=drr,
        label=f"degenerate-small-data(p={p}, q={q}, n={n}, beta={beta})",
        meta={"p": p, "q": q, "n": n, "beta": beta, "A": A, "tip_value": 0.0},
    )


def degenerate_family_member(p: float, n: int, gauge: Gauge, C: float) -> SpaceTimeFunction:
    """Member w_C of the gauge-driven barrier family for p > 2.

    With chi = (|x|/(-t)^(1/lam))^(p/(p-1)) and the smooth monotone gauge
    delta_hat,

        Q     = C + (p-2)/(p lam^(1/(p-1))) chi,
        f(t)  = -delta_hat(t)^(1/(p-2)) (-t)^(-n/lam)            (f < 0),
        rho_C = -C^(1/(p-2)) delta_hat(t) f(t)                   (> 0),
        w_C   = (Q^((p-1)/(p-2)) - C^((p-1)/(p-2))) f + rho_C.

    On the axis w_C(0, t) = rho_C(t).  Time derivatives consume the gauge's
    closed-form delta_hat'; a gauge without derivative is rejected.  The
    construction is a supersolution once C passes find_family_threshold;
    smaller C is allowed here but flagged in meta["below_threshold_unknown"].
    """
    if p <= 2:
        raise DomainError(f"requires p > 2, got p={p}")
    if C <= 0:
        raise DomainError(f"requires C > 0, got {C}")
    if gauge.ddelta is None:
        raise DomainError("gauge must carry a closed-form derivative (use envelope_gauge)")
    if not gauge.monotone_flag:
        raise DomainError("gauge must be weighted-monotone (use envelope_gauge)")
    lam = lambda_of(p, n)
    if lam <= 0:
        raise DomainError(f"lambda = {lam} must be positive")
    pp = p / (p - 1.0)
    m = (p - 1.0) / (p - 2.0)
    kap = (p - 2.0) / (p * lam ** (1.0 / (p - 1.0)))
    cpow = C ** (1.0 / (p - 2.0))
    delta, ddelta = gauge.delta, gauge.ddelta

    def _parts(r, t):
        r = np.asarray(r, dtype=float)
        t = np.asarray(t, dtype=float)
        chi = r ** pp * (-t) ** (-pp / lam)
        Q = C + kap * chi
        d = delta(t)
        f = -d ** (1.0 / (p - 2.0)) * (-t) ** (-n / lam)
        return r, t, chi, Q, d, f

    def fn(r, t):
        r, t, chi, Q, d, f = _parts(r, t)
        rho = -cpow * d * f
        out = (Q ** m - C ** m) * f + rho
        return out if out.ndim else float(out)

    def dt(r, t):
        r, t, chi, Q, d, f = _parts(r, t)
        dd = ddelta(t)
        fp = -(
            (1.0 / (p - 2.0)) * d ** (1.0 / (p - 2.0) - 1.0) * dd * (-t) ** (-n / lam)
            + d ** (1.0 / (p - 2.0)) * (n / lam) * (-t) ** (-n / lam - 1.0)
        )
        rhop = -cpow * (dd * f + d * fp)
        Qt = p * (Q - C) / (lam * (p - 1.0) * (-t))
        out = (Q ** m - C ** m) * fp + rhop + m * Q ** (m - 1.0) * Qt * f
        return out if out.ndim else float(out)

    def dr(r, t):
        r, t, chi, Q, d, f = _parts(r, t)
        Qr = kap * pp * r ** (pp - 1.0) * (-t) ** (-pp / lam)
        out = m * Q ** (m - 1.0) * Qr * f
        return out if out.ndim else float(out)

    def drr(r, t):
        r, t, chi, Q, d, f = _parts(r, t)
        Qr = kap * pp * r ** (pp - 1.0) * (-t) ** (-pp / lam)
        Qrr = kap * pp * (pp - 1.0) * r ** (pp - 2.0) * (-t) ** (-pp / lam)
        out = m * ((m - 1.0) * Q ** (m - 2.0) * Qr ** 2 + Q ** (m - 1.0) * Qrr) * f
        return out if out.ndim else float(out)

    return SpaceTimeFunction(
        fn=fn, dt=dt, dr=dr, drr=drr,
        label=f"degenerate-family(p={p}, n={n}, C={C})",
        meta={"p": p, "n": n, "C": C, "lambda": lam, "kappa": kap,
              "below_threshold_unknown": True},
    )


def find_family_threshold(p: float, n: int, gauge: Gauge,
                          c_start: float = 1.0, max_doublings: int = 60):
    """Smallest doubling C = c_start 2^j making w_C a certified supersolution.

    The supersolution proof needs three sampled conditions on the gauge grid
    (all monotone in C, so a doubling search terminates):

      (a) Q <= 2C throughout the cusp, i.e. kap * delta_hat(t) <= C;
      (b) the bracketing chain
          (C + kap delta_hat)^m - C^m <= (p-1)/p C^(1/(p-2)) delta_hat(t),
          which also forces positivity of w_C;
      (c) the residual bound
          -C^(1/(p-2)) delta_hat' + (2C)^(1/(p-2)) delta_hat/(lam^(p/(p-1)) (-t))
          - (n/lam) C^((p-1)/(p-2)) delta_hat/(-t) <= 0,
          evaluated with the envelope derivative rather than by symbolic
          differentiation of w_C (matches the certification logic and avoids
          cancellation).

    Returns (C0, details) with per-condition worst margins at C0.
    """
    if p <= 2:
        raise DomainError(f"requires p > 2, got p={p}")
    if gauge.ddelta is None or gauge.t_samples is None:
        raise DomainError("gauge must carry samples and a derivative")
    lam = lambda_of(p, n)
    m = (p - 1.0) / (p - 2.0)
    kap = (p - 2.0) / (p * lam ** (1.0 / (p - 1.0)))
    ts = gauge.t_samples
    d = np.asarray(gauge.delta(ts), dtype=float)
    dd = np.asarray(gauge.ddelta(ts), dtype=float)
    tol = 1e-12

    def margins(C):
        cpow = C ** (1.0 / (p - 2.0))
        a = C - kap * d                                   # >= 0 wanted
        b = (p - 1.0) / p * cpow * d - ((C + kap * d) ** m - C ** m)
        h = -(-cpow * dd + (2.0 * C) ** (1.0 / (p - 2.0)) * d / (lam ** (p / (p - 1.0)) * (-ts))
              - (n / lam) * C ** m * d / (-ts))           # >= 0 wanted
        return float(a.min()), float(b.min()), float(h.min())

    C = float(c_start)
    for _ in range(max_doublings):
        ma, mb, mh = margins(C)
        scale = max(1.0, C)
        if ma >= -tol * scale and mb >= -tol * scale and mh >= -tol * scale:
            return C, {"margin_sandwich": ma, "margin_chain": mb, "margin_residual": mh,
                       "kappa": kap, "lambda": lam, "theta": gauge.theta}
        C *= 2.0
    raise DomainError(f"no admissible C found up to {C} (gauge not weighted-monotone?)")


@dataclass(frozen=True)
class BarrierSpec:
    """A constructed barrier: kind, parameters, named constants, function."""

    kind: str
    params: Params
    constants: dict
    fn: SpaceTimeFunction
    gauge: Optional[Gauge] = None
    meta: dict = field(default_factory=dict)

    def reference_profile(self) -> DomainProfile:
        """The domain on which the construction's inequalities are certified."""
        p = self.params
        if self.kind == "degenerate_irregularity":
            return make_profile("power", K=1.0, q=1.0 / p.p, t0=p.t0)
        K = p.K if p.K is not None else 1.0
        return make_profile("power", K=K, q=p.q, t0=p.t0)

    def to_json_dict(self, grid_hash: Optional[str] = None) -> dict:
        out = {
            "kind": self.kind,
            "parameters": {
                "p": self.params.p, "n": self.params.n, "q": self.params.q,
                "K": self.params.K, "t0": self.params.t0,
            },
            "constants": dict(sorted(self.constants.items())),
        }
        if grid_hash is not None:
            out["verification_grid_hash"] = grid_hash
        return out

    def json_hash(self) -> str:
        payload = json.dumps(self.to_json_dict(), sort_keys=True).encode()
        return hashlib.sha256(payload).hexdigest()


def make_barrier(kind: str, p: float, n: int, q: Optional[float] = None,
                 K: Optional[float] = None, t0: float = -1.0,
                 C: Optional[float] = None, beta: Optional[float] = None,
                 gauge: Optional[Gauge] = None) -> BarrierSpec:
    """Factory building a BarrierSpec for any of the five kinds."""
    lam = lambda_of(p, n)
    if kind == "singular_irregularity":
        if q is None:
            raise DomainError("singular_irregularity needs q")
        fn = singular_irregularity_barrier(p, q, n)
        params = Params(p=p, n=n, q=q, K=K or 1.0, t0=t0)
        consts = {"lambda": lam, "tip_value": 1.0}
    elif kind == "singular_traditional":
        if q is None:
            raise DomainError("singular_traditional needs q")
        fn = singular_traditional_barrier(p, q, n)
        params = Params(p=p, n=n, q=q, K=1.0, t0=t0)
        consts = {"B": b_const(p, n), "M": m_const(p, q, n), "lambda": lam}
    elif kind == "degenerate_irregularity":
        if C is None:
            raise DomainError("degenerate_irregularity needs C")
        fn = degenerate_irregularity_barrier(p, n, C)
        params = Params(p=p, n=n, q=1.0 / p, K=1.0, t0=t0)
        consts = {"C": C, "c_max": c_max(p, n), "lambda": lam}
    elif kind == "degenerate_small_data":
        if q is None or beta is None:
            raise DomainError("degenerate_small_data needs q and beta")
        fn = degenerate_small_data_barrier(p, q, n, beta)
        params = Params(p=p, n=n, q=q, K=1.0, t0=t0)
        consts = {"A": small_data_amplitude(p, n, beta), "beta": beta, "lambda": lam}
    elif kind == "degenerate_family_member":
        if C is None or gauge is None:
            raise DomainError("degenerate_family_member needs C and a gauge")
        fn = degenerate_family_member(p, n, gauge, C)
        params = Params(p=p, n=n, q=q, K=K, t0=t0)
        consts = {"C": C, "lambda": lam, "beta_gauge": gauge.beta,
                  "theta": gauge.theta}
    else:
        raise DomainError(f"unknown barrier kind {kind!r}; valid: {BARRIER_KINDS}")
    return BarrierSpec(kind=kind, params=params, constants=consts, fn=fn, gauge=gauge)
