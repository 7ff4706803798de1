"""Topological quandle structures on intervals, balls, the real line and charts.

Every spec is an immutable dataclass whose ``op(x, y)`` is vectorised over
numpy arrays. One-dimensional specs take arrays of any shape; ball-type specs
take arrays whose last axis holds coordinates. ``op(x, y)`` is ``R_y(x)``.

Branch seams are decided with plain float comparisons; at a seam the identity
branch is taken, and the power branch agrees with it there because the
exponent tends to 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, ClassVar

import numpy as np

OPEN_MARGIN = 1e-6


class DomainError(ValueError):
    pass


# -- exponent profiles ------------------------------------------------------


@dataclass(frozen=True)
class LinearExponent:
    """h(eps) = 1 + eps."""

    def __call__(self, eps):
        return 1.0 + eps

    def to_json(self) -> dict:
        return {"kind": "linear"}


@dataclass(frozen=True)
class TentExponent:
    """h(eps) = 1 + eps up to ``peak``, then 1 + 2*peak - eps."""

    peak: float

    def __call__(self, eps):
        return np.where(eps <= self.peak, 1.0 + eps, 1.0 + 2 * self.peak - eps)

    def to_json(self) -> dict:
        return {"kind": "tent", "peak": self.peak}


@dataclass(frozen=True)
class CustomExponent:
    """Any continuous ``h`` with h(0) = 1 and h > 0 on the parameter range."""

    fn: Callable
    name: str = "custom"

    def __call__(self, eps):
        return self.fn(eps)

    def to_json(self) -> dict:
        raise TypeError("custom exponent functions are not serialisable")


LINEAR = LinearExponent()


def _check_exponent(h, eps_max: float) -> None:
    eps = np.linspace(0.0, eps_max, 257)
    vals = np.asarray(h(eps), dtype=float) * np.ones_like(eps)
    if not np.all(np.isfinite(vals)) or np.any(vals <= 0):
        raise ValueError("exponent must be positive so every power map is a homeomorphism")
    if abs(float(vals[0]) - 1.0) > 1e-12:
        raise ValueError("exponent must equal 1 at eps = 0 for continuity at the seam")


def _exponent_from_json(data: dict | None):
    if data is None or data.get("kind", "linear") == "linear":
        return LINEAR
    if data["kind"] == "tent":
        return TentExponent(float(data["peak"]))
    raise ValueError(f"unknown exponent kind {data['kind']!r}")


# -- shared piecewise formulas ----------------------------------------------


def _interval_op(x, y, a, b, h):
    mid = (a + b) / 2
    half = (b - a) / 2
    active = (y > mid) & (x < mid)
    base = np.clip((x - a) / half, 0.0, None)
    power = np.power(base, h(np.where(active, y - mid, 0.0)))
    return np.where(active, a + half * power, x)


def _interval_inv(z, y, a, b, h):
    mid = (a + b) / 2
    half = (b - a) / 2
    active = (y > mid) & (z < mid)
    base = np.clip((z - a) / half, 0.0, None)
    power = np.power(base, 1.0 / h(np.where(active, y - mid, 0.0)))
    return np.where(active, a + half * power, z)


def _ball_exponent(u, v, variant):
    if variant == "paper-faithful":
        xfac = 1.0 - np.sum(u * u, axis=-1)
    else:
        xfac = 1.0 - np.sum(u[..., 1:] * u[..., 1:], axis=-1)
    return 1.0 + v[..., 0] * (1.0 - np.sum(v * v, axis=-1)) * xfac


def _unit_ball_op(u, v, variant):
    active = (v[..., 0] > 0) & (u[..., 0] < 0)
    p = _ball_exponent(u, v, variant)
    first = -1.0 + np.power(np.clip(u[..., 0] + 1.0, 0.0, None), np.where(active, p, 1.0))
    out = np.array(u, dtype=float, copy=True)
    out[..., 0] = np.where(active, first, u[..., 0])
    return out


def _unit_ball_inv(w, v, variant, iterations: int = 200):
    active = (v[..., 0] > 0) & (w[..., 0] < 0)
    out = np.array(w, dtype=float, copy=True)
    if variant == "invariant-exponent":
        p = _ball_exponent(w, v, variant)
        first = -1.0 + np.power(np.clip(w[..., 0] + 1.0, 0.0, None), 1.0 / np.where(active, p, 1.0))
        out[..., 0] = np.where(active, first, w[..., 0])
        return out
    # exponent depends on the unknown first coordinate; the map is increasing on
    # (-1, 0), so bracket and bisect
    target = w[..., 0]
    lo = np.full(target.shape, -1.0)
    hi = np.zeros(target.shape)
    probe = np.array(w, dtype=float, copy=True)
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        probe[..., 0] = mid
        with np.errstate(divide="ignore", invalid="ignore"):  # masked-off lanes may overflow
            val = -1.0 + np.power(mid + 1.0, _ball_exponent(probe, v, variant))
        below = val < target
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
        if np.all(hi - lo <= 0):
            break
    out[..., 0] = np.where(active, 0.5 * (lo + hi), w[..., 0])
    return out


def _grid(lo: float, hi: float, m: int) -> np.ndarray:
    # same u = i/(m-1) gives bit-identical points across nested grids
    u = np.arange(m) / (m - 1)
    return lo + (hi - lo) * u


# -- spec base --------------------------------------------------------------


class ContinuumSpec:
    """Common surface of every construction."""

    kind: ClassVar[str] = ""
    dim: ClassVar[int] = 1
    closed: ClassVar[bool] = True
    # points carry a trailing coordinate axis
    vector: ClassVar[bool] = False

    def op(self, x, y):
        raise NotImplementedError

    def rmul_inv(self, z, y):
        raise NotImplementedError

    def bounds(self) -> tuple[float, float]:
        """Sampling box for one coordinate."""
        raise NotImplementedError

    def contains(self, x) -> np.ndarray:
        lo, hi = self.bounds()
        x = np.asarray(x, dtype=float)
        if self.closed:
            return (x >= lo) & (x <= hi)
        return (x > lo) & (x < hi)

    def sample(self, grid: int) -> np.ndarray:
        if grid < 2:
            raise ValueError("grid needs at least 2 points per axis")
        lo, hi = self.bounds()
        if not self.closed:
            d = OPEN_MARGIN * (hi - lo)
            lo, hi = lo + d, hi - d
        pts = _grid(lo, hi, grid)
        return pts[self.contains(pts)]

    def to_json(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class ClosedInterval(ContinuumSpec):
    """Two-piece quandle on [a, b]: the left half is moved by powers when y is in the right half."""

    a: float = 0.0
    b: float = 1.0
    exponent: object = LINEAR

    kind: ClassVar[str] = "closed-interval"

    def __post_init__(self):
        if not self.a < self.b:
            raise ValueError("need a < b")
        _check_exponent(self.exponent, (self.b - self.a) / 2)

    def bounds(self):
        return (self.a, self.b)

    def op(self, x, y):
        return _interval_op(np.asarray(x, float), np.asarray(y, float), self.a, self.b, self.exponent)

    def rmul_inv(self, z, y):
        return _interval_inv(np.asarray(z, float), np.asarray(y, float), self.a, self.b, self.exponent)

    def to_json(self):
        return {"kind": self.kind, "a": self.a, "b": self.b, "exponent": self.exponent.to_json()}


@dataclass(frozen=True)
class UnitInterval(ClosedInterval):
    """f(x, y) = x unless y > 1/2 and x < 1/2, where it is (2x)**(1+eps)/2 with y = 1/2 + eps."""

    a: float = field(default=0.0, init=False)
    b: float = field(default=1.0, init=False)
    exponent: object = LINEAR

    kind: ClassVar[str] = "unit-interval"

    def to_json(self):
        return {"kind": self.kind, "exponent": self.exponent.to_json()}


@dataclass(frozen=True)
class TrivialSpace(ContinuumSpec):
    a: float = 0.0
    b: float = 1.0

    kind: ClassVar[str] = "trivial"

    def __post_init__(self):
        if not self.a < self.b:
            raise ValueError("need a < b")

    def bounds(self):
        return (self.a, self.b)

    def op(self, x, y):
        return np.array(np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))[0])

    def rmul_inv(self, z, y):
        return self.op(z, y)

    def to_json(self):
        return {"kind": self.kind, "a": self.a, "b": self.b}


@dataclass(frozen=True)
class OpenIntervalG(ContinuumSpec):
    """Quandle on (-1, 1) whose action fades out as y -> 1."""

    kind: ClassVar[str] = "open-interval-g"
    closed: ClassVar[bool] = False

    def bounds(self):
        return (-1.0, 1.0)

    @staticmethod
    def _exponent(y):
        return 1.0 + y * (1.0 - y * y)

    def op(self, x, y):
        x, y = np.asarray(x, float), np.asarray(y, float)
        active = (y > 0) & (x < 0)
        p = np.where(active, self._exponent(y), 1.0)
        return np.where(active, -1.0 + np.power(np.clip(x + 1.0, 0.0, None), p), x)

    def rmul_inv(self, z, y):
        z, y = np.asarray(z, float), np.asarray(y, float)
        active = (y > 0) & (z < 0)
        p = np.where(active, self._exponent(y), 1.0)
        return np.where(active, -1.0 + np.power(np.clip(z + 1.0, 0.0, None), 1.0 / p), z)

    def to_json(self):
        return {"kind": self.kind}


BALL_VARIANTS = ("paper-faithful", "invariant-exponent")


class _BallLike(ContinuumSpec):
    closed: ClassVar[bool] = False
    vector: ClassVar[bool] = True

    def sample(self, grid: int) -> np.ndarray:
        if grid < 2:
            raise ValueError("grid needs at least 2 points per axis")
        lo, hi = self.bounds()
        d = OPEN_MARGIN * (hi - lo)
        axis = _grid(lo + d, hi - d, grid)
        mesh = np.stack(np.meshgrid(*([axis] * self.dim), indexing="ij"), axis=-1)
        pts = mesh.reshape(-1, self.dim)
        return pts[self.contains(pts)]


@dataclass(frozen=True)
class BallOmega(_BallLike):
    """Quandle on an open ball; only the first coordinate moves.

    ``variant="paper-faithful"`` uses exponent 1 + v1 (1 - |v|^2)(1 - |u|^2)
    in unit-ball coordinates u (point) and v (acting point).
    ``variant="invariant-exponent"`` drops u1 from the last factor so the
    exponent is unchanged by the move.
    """

    dim: int = 2
    variant: str = "paper-faithful"
    center: tuple[float, ...] | None = None
    radius: float = 1.0

    kind: ClassVar[str] = "ball"

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be at least 1")
        if self.variant not in BALL_VARIANTS:
            raise ValueError(f"variant must be one of {BALL_VARIANTS}")
        if not self.radius > 0:
            raise ValueError("radius must be positive")
        if self.center is not None and len(self.center) != self.dim:
            raise ValueError("center has the wrong dimension")

    @property
    def _c(self) -> np.ndarray:
        return np.zeros(self.dim) if self.center is None else np.asarray(self.center, float)

    def bounds(self):
        c = self._c
        return (float(c.min()) - self.radius, float(c.max()) + self.radius)

    def sample(self, grid):
        c, r = self._c, self.radius
        d = OPEN_MARGIN * 2 * r
        axes = [_grid(ci - r + d, ci + r - d, grid) for ci in c]
        pts = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, self.dim)
        return pts[self.contains(pts)]

    def contains(self, x):
        x = np.asarray(x, float)
        u = (x - self._c) / self.radius
        return np.sum(u * u, axis=-1) < 1.0

    def op(self, x, y):
        c, r = self._c, self.radius
        u = (np.asarray(x, float) - c) / r
        v = (np.asarray(y, float) - c) / r
        u, v = np.broadcast_arrays(u, v)
        return c + r * _unit_ball_op(u, v, self.variant)

    def rmul_inv(self, z, y):
        c, r = self._c, self.radius
        w = (np.asarray(z, float) - c) / r
        v = (np.asarray(y, float) - c) / r
        w, v = np.broadcast_arrays(w, v)
        return c + r * _unit_ball_inv(w, v, self.variant)

    def to_json(self):
        out = {"kind": self.kind, "dim": self.dim, "variant": self.variant, "radius": self.radius}
        if self.center is not None:
            out["center"] = list(self.center)
        return out


@dataclass(frozen=True)
class FamilyFn(ContinuumSpec):
    """[a, b] cut into n equal pieces, each carrying its own closed-interval quandle.

    Points in different pieces act trivially on each other.
    """

    n: int = 1
    a: float = 0.0
    b: float = 1.0
    exponent: object = LINEAR

    kind: ClassVar[str] = "family-fn"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be a positive integer")
        if not self.a < self.b:
            raise ValueError("need a < b")
        _check_exponent(self.exponent, (self.b - self.a) / (2 * self.n))

    @property
    def knots(self) -> np.ndarray:
        return self.a + (self.b - self.a) * np.arange(self.n + 1) / self.n

    def bounds(self):
        return (self.a, self.b)

    def _piece(self, x, y):
        knots = self.knots
        kx = np.clip(np.floor((x - self.a) / (self.b - self.a) * self.n), 0, self.n - 1).astype(int)
        piece = np.full(np.broadcast(x, y).shape, -1)
        for shift in (0, -1, 1):
            k = np.clip(kx + shift, 0, self.n - 1)
            lo, hi = knots[k], knots[k + 1]
            both = (x >= lo) & (x <= hi) & (y >= lo) & (y <= hi)
            piece = np.where((piece < 0) & both, k, piece)
        return piece

    def op(self, x, y):
        x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
        piece = self._piece(x, y)
        knots = self.knots
        k = np.clip(piece, 0, self.n - 1)
        out = _interval_op(x, y, knots[k], knots[k + 1], self.exponent)
        return np.where(piece >= 0, out, x)

    def rmul_inv(self, z, y):
        z, y = np.broadcast_arrays(np.asarray(z, float), np.asarray(y, float))
        # R_y preserves each piece, so the piece of z is the piece of the preimage
        piece = self._piece(z, y)
        knots = self.knots
        k = np.clip(piece, 0, self.n - 1)
        out = _interval_inv(z, y, knots[k], knots[k + 1], self.exponent)
        return np.where(piece >= 0, out, z)

    def to_json(self):
        return {"kind": self.kind, "n": self.n, "a": self.a, "b": self.b, "exponent": self.exponent.to_json()}


@dataclass(frozen=True)
class FamilyOmegaN(_BallLike):
    """Open unit ball holding n-1 small balls of radius 1/n centred on the first axis."""

    n: int = 2
    dim: int = 2
    variant: str = "paper-faithful"

    kind: ClassVar[str] = "family-omega"
    max_dim: ClassVar[int] = 3

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be a positive integer")
        if not 1 <= self.dim <= self.max_dim:
            raise ValueError(f"dimension must be between 1 and {self.max_dim}")
        if self.variant not in BALL_VARIANTS:
            raise ValueError(f"variant must be one of {BALL_VARIANTS}")

    @property
    def centers(self) -> np.ndarray:
        c = np.zeros((max(self.n - 1, 0), self.dim))
        c[:, 0] = -1.0 + 2.0 * np.arange(1, self.n) / self.n
        return c

    def bounds(self):
        return (-1.0, 1.0)

    def contains(self, x):
        x = np.asarray(x, float)
        return np.sum(x * x, axis=-1) < 1.0

    def _ball_index(self, x):
        r = 1.0 / self.n
        k = np.clip(np.rint((x[..., 0] + 1.0) * self.n / 2.0), 1, max(self.n - 1, 1)).astype(int)
        center0 = -1.0 + 2.0 * k / self.n
        d2 = (x[..., 0] - center0) ** 2 + np.sum(x[..., 1:] ** 2, axis=-1)
        inside = (d2 < r * r) & (self.n > 1)
        return np.where(inside, k, 0)

    def op(self, x, y):
        x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
        kx, ky = self._ball_index(x), self._ball_index(y)
        same = (kx > 0) & (kx == ky)
        r = 1.0 / self.n
        center = np.zeros(x.shape)
        center[..., 0] = -1.0 + 2.0 * kx / self.n
        moved = center + r * _unit_ball_op((x - center) / r, (y - center) / r, self.variant)
        return np.where(same[..., None], moved, x)

    def rmul_inv(self, z, y):
        z, y = np.broadcast_arrays(np.asarray(z, float), np.asarray(y, float))
        kz, ky = self._ball_index(z), self._ball_index(y)
        same = (kz > 0) & (kz == ky)
        r = 1.0 / self.n
        center = np.zeros(z.shape)
        center[..., 0] = -1.0 + 2.0 * kz / self.n
        moved = center + r * _unit_ball_inv((z - center) / r, (y - center) / r, self.variant)
        return np.where(same[..., None], moved, z)

    def to_json(self):
        return {"kind": self.kind, "n": self.n, "dim": self.dim, "variant": self.variant}


@dataclass(frozen=True)
class Chart:
    """A homeomorphism from a space onto (part of) an inner spec's domain."""

    name: str
    forward: Callable
    inverse: Callable
    lo: float
    hi: float
    closed: bool = False


ARCTAN = Chart("arctan", np.arctan, np.tan, -math.inf, math.inf)


@dataclass(frozen=True)
class ChartTransport(ContinuumSpec):
    """G(x, y) = inverse(inner(forward(x), forward(y))) on the chart, x elsewhere."""

    inner: ContinuumSpec = field(default_factory=OpenIntervalG)
    chart: Chart = ARCTAN
    box: tuple[float, float] = (-4.0, 4.0)
    check_points: int = 101

    kind: ClassVar[str] = "chart"

    def __post_init__(self):
        if self.inner.vector:
            raise ValueError("charts are only supported for one-dimensional inner specs")
        u = self.inner.sample(self.check_points)
        err = np.max(np.abs(self.chart.forward(self.chart.inverse(u)) - u))
        if not err <= 1e-9:
            raise ValueError(f"chart forward(inverse(u)) deviates from u by {err:.3g}")

    @property
    def closed(self):  # type: ignore[override]
        return self.chart.closed

    def bounds(self):
        lo = self.chart.lo if math.isfinite(self.chart.lo) else self.box[0]
        hi = self.chart.hi if math.isfinite(self.chart.hi) else self.box[1]
        return (lo, hi)

    def contains(self, x):
        x = np.asarray(x, float)
        if self.chart.closed:
            return (x >= self.chart.lo) & (x <= self.chart.hi)
        return (x > self.chart.lo) & (x < self.chart.hi)

    def sample(self, grid):
        lo, hi = self.bounds()
        if not self.closed and (math.isfinite(self.chart.lo) or math.isfinite(self.chart.hi)):
            d = OPEN_MARGIN * (hi - lo)
            lo, hi = lo + d, hi - d
        return _grid(lo, hi, grid)

    def _in_chart(self, x):
        with np.errstate(invalid="ignore"):
            return self.contains(x) & self.inner.contains(self.chart.forward(x))

    def op(self, x, y):
        x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
        inside = self._in_chart(x) & self._in_chart(y)
        with np.errstate(invalid="ignore"):
            moved = self.chart.inverse(self.inner.op(self.chart.forward(x), self.chart.forward(y)))
        return np.where(inside, moved, x)

    def rmul_inv(self, z, y):
        z, y = np.broadcast_arrays(np.asarray(z, float), np.asarray(y, float))
        inside = self._in_chart(z) & self._in_chart(y)
        with np.errstate(invalid="ignore"):
            moved = self.chart.inverse(self.inner.rmul_inv(self.chart.forward(z), self.chart.forward(y)))
        return np.where(inside, moved, z)

    def to_json(self):
        if self.chart is not ARCTAN:
            raise TypeError("only the arctan chart is serialisable")
        return {"kind": self.kind, "chart": "arctan", "inner": self.inner.to_json(), "box": list(self.box)}


def arctan_chart_spec(box: tuple[float, float] = (-4.0, 4.0)) -> ChartTransport:
    """The real-line quandle built by pulling back a tent-profile interval quandle along arctan."""
    inner = ClosedInterval(-math.pi / 2, math.pi / 2, TentExponent(math.pi / 4))
    return ChartTransport(inner, ARCTAN, box)


@dataclass(frozen=True)
class RealLineArctan(ContinuumSpec):
    """Closed-form real-line quandle written in terms of alpha = arctan x, beta = arctan y."""

    box: tuple[float, float] = (-4.0, 4.0)

    kind: ClassVar[str] = "real-line-arctan"
    closed: ClassVar[bool] = False

    def bounds(self):
        return self.box

    def contains(self, x):
        return np.isfinite(np.asarray(x, float))

    def sample(self, grid):
        return _grid(self.box[0], self.box[1], grid)

    @staticmethod
    def _exponent(beta):
        return np.where(beta <= math.pi / 4, 1.0 + beta, 1.0 + math.pi / 2 - beta)

    def op(self, x, y):
        x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
        alpha, beta = np.arctan(x), np.arctan(y)
        active = (alpha < 0) & (beta >= 0)
        base = np.clip(2 / math.pi * (alpha + math.pi / 2), 0.0, None)
        p = np.where(active, self._exponent(beta), 1.0)
        return np.where(active, np.tan(-math.pi / 2 + math.pi / 2 * np.power(base, p)), x)

    def rmul_inv(self, z, y):
        z, y = np.broadcast_arrays(np.asarray(z, float), np.asarray(y, float))
        gamma, beta = np.arctan(z), np.arctan(y)
        active = (gamma < 0) & (beta >= 0)
        base = np.clip(2 / math.pi * (gamma + math.pi / 2), 0.0, None)
        p = np.where(active, self._exponent(beta), 1.0)
        return np.where(active, np.tan(-math.pi / 2 + math.pi / 2 * np.power(base, 1.0 / p)), z)

    def to_json(self):
        return {"kind": self.kind, "box": list(self.box)}


@dataclass(frozen=True)
class AffineLine(ContinuumSpec):
    """f_t(x, y) = t x + (1 - t) y on the real line."""

    t: float = 2.0
    box: tuple[float, float] = (-1.0, 1.0)

    kind: ClassVar[str] = "affine"
    closed: ClassVar[bool] = False

    def __post_init__(self):
        if self.t == 0:
            raise ValueError("t must be nonzero")

    def bounds(self):
        return self.box

    def contains(self, x):
        return np.isfinite(np.asarray(x, float))

    def sample(self, grid):
        return _grid(self.box[0], self.box[1], grid)

    def op(self, x, y):
        return self.t * np.asarray(x, float) + (1 - self.t) * np.asarray(y, float)

    def rmul_inv(self, z, y):
        return (np.asarray(z, float) - (1 - self.t) * np.asarray(y, float)) / self.t

    def to_json(self):
        return {"kind": self.kind, "t": self.t, "box": list(self.box)}


@dataclass(frozen=True)
class Gluing(ContinuumSpec):
    """X = X1 ∪ X2 made into a quandle from a family of homeomorphisms of X1.

    ``phi(x, y)`` moves x in X1 by the homeomorphism attached to y in X2 and
    ``phi_inverse`` undoes it. Every other pair acts trivially. The caller is
    responsible for the family commuting and being the identity on X1 ∩ X2.
    """

    in_first: Callable
    in_second: Callable
    phi: Callable
    phi_inverse: Callable
    lo: float
    hi: float

    kind: ClassVar[str] = "gluing"

    def bounds(self):
        return (self.lo, self.hi)

    def _active(self, x, y):
        return self.in_first(x) & ~self.in_second(x) & self.in_second(y) & ~self.in_first(y)

    def op(self, x, y):
        x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
        active = self._active(x, y)
        with np.errstate(invalid="ignore"):
            return np.where(active, self.phi(x, y), x)

    def rmul_inv(self, z, y):
        z, y = np.broadcast_arrays(np.asarray(z, float), np.asarray(y, float))
        active = self._active(z, y)
        with np.errstate(invalid="ignore"):
            return np.where(active, self.phi_inverse(z, y), z)

    def to_json(self):
        raise TypeError("gluings built from Python callables are not serialisable")


# -- point-level API --------------------------------------------------------


def _as_point(spec: ContinuumSpec, x) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    expected = (spec.dim,) if spec.vector else ()
    if arr.shape != expected:
        raise DomainError(f"expected a point of shape {expected}, got {arr.shape}")
    if not bool(spec.contains(arr)):
        raise DomainError(f"{x!r} is outside the domain of {spec.kind}")
    return arr


def _unpack(spec: ContinuumSpec, value):
    return tuple(float(v) for v in value) if spec.vector else float(value)


def evaluate(spec: ContinuumSpec, x, y):
    """f(x, y) for single points, with domain checks."""
    return _unpack(spec, spec.op(_as_point(spec, x), _as_point(spec, y)))


def right_mul(spec: ContinuumSpec, y) -> Callable:
    yy = _as_point(spec, y)
    return lambda x: _unpack(spec, spec.op(_as_point(spec, x), yy))


def right_mul_inverse(spec: ContinuumSpec, y) -> Callable:
    yy = _as_point(spec, y)
    return lambda z: _unpack(spec, spec.rmul_inv(_as_point(spec, z), yy))


def right_mul_curves(epsilons, samples: int, spec: ContinuumSpec | None = None) -> list[tuple[float, float, float]]:
    """Rows ``(x, eps, R_y(x))`` with y = mid + eps, x spanning the left half.

    Rows are ordered by x, then eps.
    """
    spec = spec or UnitInterval()
    lo, hi = spec.bounds()
    mid = (lo + hi) / 2
    xs = _grid(lo, mid, samples)
    eps = sorted(float(e) for e in epsilons)
    for e in eps:
        if not 0 <= e <= hi - mid:
            raise DomainError(f"epsilon {e} puts y outside the domain")
    rows = []
    for x in xs:
        for e in eps:
            rows.append((float(x), e, float(spec.op(x, mid + e))))
    return rows


# -- JSON -------------------------------------------------------------------


def spec_from_json(data: dict) -> ContinuumSpec:
    kind = data.get("kind")
    exponent = _exponent_from_json(data.get("exponent"))
    if kind == "unit-interval":
        return UnitInterval(exponent=exponent)
    if kind == "closed-interval":
        return ClosedInterval(float(data["a"]), float(data["b"]), exponent)
    if kind == "trivial":
        return TrivialSpace(float(data.get("a", 0.0)), float(data.get("b", 1.0)))
    if kind == "open-interval-g":
        return OpenIntervalG()
    if kind == "ball":
        center = data.get("center")
        return BallOmega(
            int(data.get("dim", 2)),
            data.get("variant", "paper-faithful"),
            tuple(float(c) for c in center) if center is not None else None,
            float(data.get("radius", 1.0)),
        )
    if kind == "family-fn":
        return FamilyFn(int(data["n"]), float(data.get("a", 0.0)), float(data.get("b", 1.0)), exponent)
    if kind == "family-omega":
        return FamilyOmegaN(int(data["n"]), int(data.get("dim", 2)), data.get("variant", "paper-faithful"))
    if kind == "chart":
        if data.get("chart", "arctan") != "arctan":
            raise ValueError(f"unknown chart {data.get('chart')!r}")
        box = tuple(data.get("box", (-4.0, 4.0)))
        return ChartTransport(spec_from_json(data["inner"]), ARCTAN, box)
    if kind == "real-line-arctan":
        return RealLineArctan(tuple(data.get("box", (-4.0, 4.0))))
    if kind == "affine":
        return AffineLine(float(data["t"]), tuple(data.get("box", (-1.0, 1.0))))
    raise ValueError(f"unknown spec kind {kind!r}")
