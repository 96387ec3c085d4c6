"""Self-contained numeric kernels.

Small complex matrices live in :mod:`qmemristor.optics`; this module holds the
scenario-independent machinery: a second-order Bessel function, a fixed-step
RK4 integrator, and planar loop geometry (self-intersection detection, lobe
decomposition, shoelace areas).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "bessel_j2",
    "rk4_integrate",
    "PlanarCurve",
    "Crossing",
    "LoopDecomposition",
    "decompose_loop",
    "loop_area_unsigned",
    "shoelace_area",
]

BESSEL_DOMAIN = 50.0
_SERIES_SWITCH = 10.0  # below: ascending series is safe from cancellation


def _bessel_series(n: int, x: float) -> float:
    """Ascending power series for J_n, terms cut when negligible."""
    half = 0.5 * x
    term = half**n / math.factorial(n)
    total = term
    m = 0
    while True:
        m += 1
        term *= -(half * half) / (m * (m + n))
        total += term
        if abs(term) < 1e-16 * max(abs(total), 1e-300) and m > n:
            return total


def _bessel_miller(n: int, x: float) -> float:
    """Downward recurrence (Miller's algorithm), normalized by
    J0 + 2*sum(J_{2k}) = 1.  Stable where the ascending series cancels."""
    start = int(x) + 30 + int(3.0 * math.sqrt(x))
    if start % 2:
        start += 1
    jp, j = 0.0, 1e-30
    wanted = 0.0
    norm = 0.0
    for k in range(start, 0, -1):
        jm = (2.0 * k / x) * j - jp
        jp, j = j, jm
        if abs(j) > 1e250:  # rescale to avoid overflow
            j *= 1e-250
            jp *= 1e-250
            wanted *= 1e-250
            norm *= 1e-250
        if k - 1 == n:
            wanted = j
        if (k - 1) % 2 == 0 and k - 1 > 0:
            norm += 2.0 * j
    norm += j  # J0 contribution
    return wanted / norm


def _bessel_jn(n: int, x: float) -> float:
    """J_n(x) on |x| < BESSEL_DOMAIN, internal helper for small n."""
    if not math.isfinite(x):
        raise ValueError(f"bessel: non-finite argument {x!r}")
    ax = abs(x)
    if ax >= BESSEL_DOMAIN:
        raise ValueError(
            f"bessel: |x|={ax:g} outside accuracy domain |x| < {BESSEL_DOMAIN:g}"
        )
    sign = 1.0
    if x < 0 and n % 2 == 1:
        sign = -1.0
    if ax == 0.0:
        return 0.0 if n > 0 else 1.0
    if ax <= _SERIES_SWITCH:
        return sign * _bessel_series(n, ax)
    return sign * _bessel_miller(n, ax)


def bessel_j2(x: float) -> float:
    """Bessel function of the first kind, order 2.

    Ascending power series for small argument, downward recurrence for large;
    absolute error below 1e-12 on |x| < 50.  Raises ValueError outside the
    domain.
    """
    return _bessel_jn(2, x)


def rk4_integrate(deriv, state0, t0: float, t1: float, steps: int):
    """Classic fixed-step 4th-order Runge-Kutta.

    Returns ``(t, y)`` with ``t`` of shape (steps+1,) and ``y`` of shape
    (steps+1, dim), including both endpoints.  Deterministic; a non-finite
    derivative aborts with the offending time in the message.
    """
    if steps < 1:
        raise ValueError("rk4_integrate: steps must be >= 1")
    if not t1 > t0:
        raise ValueError("rk4_integrate: need t1 > t0")
    y0 = np.atleast_1d(np.asarray(state0, dtype=float))
    dim = y0.shape[0]
    t = t0 + (t1 - t0) * np.arange(steps + 1) / steps
    y = np.empty((steps + 1, dim))
    y[0] = y0
    h = (t1 - t0) / steps

    def f(ti, yi):
        ki = np.atleast_1d(np.asarray(deriv(ti, yi), dtype=float))
        if not np.all(np.isfinite(ki)):
            raise ValueError(f"rk4_integrate: non-finite derivative at t={ti!r}")
        return ki

    for i in range(steps):
        ti, yi = t[i], y[i]
        k1 = f(ti, yi)
        k2 = f(ti + 0.5 * h, yi + 0.5 * h * k1)
        k3 = f(ti + 0.5 * h, yi + 0.5 * h * k2)
        k4 = f(ti + h, yi + h * k3)
        y[i + 1] = yi + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return t, y


# ---------------------------------------------------------------------------
# planar loop geometry
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PlanarCurve:
    """Ordered planar curve sampled over one drive period."""

    points: np.ndarray  # (N, 2)
    closed: bool = True
    close_tol: float = 1e-8

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise ValueError("PlanarCurve: points must have shape (N, 2)")
        if pts.shape[0] < 8:
            raise ValueError("PlanarCurve: need at least 8 points")
        if not np.all(np.isfinite(pts)):
            raise ValueError("PlanarCurve: non-finite points")
        if self.closed:
            gap = float(np.hypot(*(pts[0] - pts[-1])))
            scale = max(1.0, float(np.max(np.abs(pts))))
            if gap > self.close_tol * scale:
                raise ValueError(
                    f"PlanarCurve: closed curve endpoints differ by {gap:g}"
                )
        object.__setattr__(self, "points", pts)


@dataclass(frozen=True)
class Crossing:
    """Self-intersection of a curve with itself.

    ``transversal`` is False for tangential (near-parallel) contacts, which
    are reported but never used to split the curve.
    """

    point: tuple[float, float]
    seg_i: int
    seg_j: int
    sin_angle: float
    transversal: bool


@dataclass(frozen=True)
class LoopDecomposition:
    sub_loops: list = field(default_factory=list)  # list of (M, 2) arrays
    signed_areas: np.ndarray = field(default_factory=lambda: np.zeros(0))
    crossings: list = field(default_factory=list)  # list of Crossing
    crossing_count: int = 0  # transversal only
    degenerate_count: int = 0

    @property
    def sub_loop_count(self) -> int:
        return len(self.sub_loops)


def shoelace_area(points: np.ndarray) -> float:
    """Signed area of a closed polyline (last point may repeat the first)."""
    pts = np.asarray(points, dtype=float)
    if np.allclose(pts[0], pts[-1]):
        pts = pts[:-1]
    x, y = pts[:, 0], pts[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def _segment_intersections(pts: np.ndarray, tol: float, parallel_tol: float):
    """All pairwise intersections of non-adjacent segments of a closed
    polyline.  Returns (i, j, s, t, point, sin_angle, transversal) tuples
    with i < j and s, t the parameters along segments i and j."""
    if np.allclose(pts[0], pts[-1]):
        pts = pts[:-1]
    n = len(pts)
    P = pts
    D = np.roll(pts, -1, axis=0) - pts  # segment direction vectors
    lens = np.hypot(D[:, 0], D[:, 1])
    out = []
    block = 256
    for i0 in range(0, n, block):
        i1 = min(i0 + block, n)
        for i in range(i0, i1):
            jmax = n if i > 0 else n - 1  # segment 0 is adjacent to n-1
            js = np.arange(i + 2, jmax)
            if js.size == 0:
                continue
            r = D[i]
            q = P[js]
            s = D[js]
            denom = r[0] * s[:, 1] - r[1] * s[:, 0]
            d = q - P[i]
            cross_dr = d[:, 0] * r[1] - d[:, 1] * r[0]
            cross_ds = d[:, 0] * s[:, 1] - d[:, 1] * s[:, 0]
            with np.errstate(divide="ignore", invalid="ignore"):
                tpar = cross_ds / denom
                upar = cross_dr / denom
            hit = (
                (np.abs(denom) > 0)
                & (tpar >= 0.0)
                & (tpar < 1.0)
                & (upar >= 0.0)
                & (upar < 1.0)
            )
            for idx in np.nonzero(hit)[0]:
                j = int(js[idx])
                ll = lens[i] * lens[j]
                sina = abs(denom[idx]) / ll if ll > 0 else 0.0
                point = P[i] + tpar[idx] * r
                out.append(
                    (
                        i,
                        j,
                        float(tpar[idx]),
                        float(upar[idx]),
                        (float(point[0]), float(point[1])),
                        float(sina),
                        sina >= parallel_tol,
                    )
                )
    return out, pts


def _split_recursive(pts: np.ndarray, tol: float, parallel_tol: float, loops: list):
    hits, pts = _segment_intersections(pts, tol, parallel_tol)
    trans = [h for h in hits if h[6]]
    if not trans:
        loops.append(np.vstack([pts, pts[:1]]))
        return
    i, j, s, t, point, _, _ = trans[0]
    x = np.asarray(point)
    inner = np.vstack([[x], pts[i + 1 : j + 1], [x]])
    outer = np.vstack([pts[: i + 1], [x], pts[j + 1 :], pts[:1] * 0 + pts[0]])
    # drop the duplicated closure point before recursing
    _split_recursive(inner[:-1], tol, parallel_tol, loops)
    _split_recursive(outer[:-1], tol, parallel_tol, loops)


def decompose_loop(
    curve: PlanarCurve, tol: float = 1e-9, parallel_tol: float = 1e-2
) -> LoopDecomposition:
    """Split a closed curve at its transversal self-intersections.

    Each detected intersection is classified by the sine of the crossing
    angle: below ``parallel_tol`` it is a tangential contact (typical of the
    pinch point of a hysteresis loop, where two parabolic arcs touch the
    origin) and is flagged degenerate instead of splitting the curve.  Every
    sub-loop carries its shoelace signed area; the signed areas sum to the
    raw shoelace area of the full curve.
    """
    if not curve.closed:
        raise ValueError("decompose_loop: open curve rejected")
    if tol <= 0:
        raise ValueError("decompose_loop: tol must be positive")
    hits, pts = _segment_intersections(curve.points, tol, parallel_tol)
    crossings = [
        Crossing(point=h[4], seg_i=h[0], seg_j=h[1], sin_angle=h[5], transversal=h[6])
        for h in hits
    ]
    loops: list = []
    _split_recursive(pts, tol, parallel_tol, loops)
    areas = np.array([shoelace_area(lp) for lp in loops])
    n_trans = sum(1 for c in crossings if c.transversal)
    return LoopDecomposition(
        sub_loops=loops,
        signed_areas=areas,
        crossings=crossings,
        crossing_count=n_trans,
        degenerate_count=len(crossings) - n_trans,
    )


def loop_area_unsigned(curve: PlanarCurve, tol: float = 1e-9) -> float:
    """Total unsigned area: sum of |signed area| over the sub-loops.

    Lobes of opposite orientation do not cancel; this is the memory-area
    measure used throughout.
    """
    dec = decompose_loop(curve, tol=tol)
    return float(np.sum(np.abs(dec.signed_areas)))
