"""Grid-based axiom checks, trivial-locus extraction and the locus certificate."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .continuum import (
    ClosedInterval,
    ContinuumSpec,
    FamilyFn,
    FamilyOmegaN,
    TrivialSpace,
)
from .report import LocusReport, VerificationReport

DEFAULT_TOL = 1e-9
INVERSE_TOL = 1e-10
_CHUNK_ELEMENTS = 2_000_000


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("QTOP_THREADS", "1")))
    except ValueError:
        return 1


def _defect(a: np.ndarray, b: np.ndarray, vector: bool) -> np.ndarray:
    d = np.abs(a - b)
    if vector:
        d = d.max(axis=-1)
    # NaN (formula evaluated off its domain) must never hide as "small"
    return np.where(np.isnan(d), np.inf, d)


def _point(p, vector: bool):
    return tuple(float(v) for v in p) if vector else float(p)


def _grid_label(spec: ContinuumSpec, grid: int, npts: int, arity: int) -> str:
    return f"{spec.kind}: {grid} per axis, {npts} sample points, {npts**arity} tuples"


def residual_at(spec: ContinuumSpec, axiom: str, witness: tuple) -> float:
    """Recompute the defect of ``axiom`` at a single witness tuple."""
    pts = [np.asarray(w, dtype=float) for w in witness]
    vec = spec.vector
    if axiom == "idempotency":
        (x,) = pts
        return float(_defect(spec.op(x, x), x, vec))
    if axiom == "self_distributivity":
        x, y, z = pts
        return float(_defect(spec.op(spec.op(x, y), z), spec.op(spec.op(x, z), spec.op(y, z)), vec))
    if axiom == "case4_swap":
        x, y, z = pts
        return float(_defect(spec.op(spec.op(x, y), z), spec.op(spec.op(x, z), y), vec))
    raise ValueError(f"no pointwise residual for {axiom!r}")


# -- idempotency ------------------------------------------------------------


def verify_idempotency(spec: ContinuumSpec, grid: int = 101, tol: float = DEFAULT_TOL) -> VerificationReport:
    pts = spec.sample(grid)
    res = _defect(spec.op(pts, pts), pts, spec.vector)
    i = int(np.argmax(res))
    worst = float(res[i])
    return VerificationReport(
        axiom="idempotency",
        grid=_grid_label(spec, grid, len(pts), 1),
        max_residual=worst,
        witness=(_point(pts[i], spec.vector),),
        passed=worst <= tol,
        tol=tol,
    )


# -- distributivity ---------------------------------------------------------


def _sweep_triples(spec, xs, ys, zs, identity: str):
    """Max defect over xs × ys × zs, returned with its argmax indices."""
    vec = spec.vector
    if len(xs) == 0 or len(ys) == 0 or len(zs) == 0:
        return 0.0, None
    per_x = len(ys) * len(zs) * (spec.dim if vec else 1)
    step = max(1, _CHUNK_ELEMENTS // max(per_x, 1))
    sl = (slice(None),) if vec else ()
    Y = ys[(None, slice(None), None) + sl]
    Z = zs[(None, None, slice(None)) + sl]

    def chunk(start):
        X = xs[(slice(start, start + step), None, None) + sl]
        lhs = spec.op(spec.op(X, Y), Z)
        if identity == "distributivity":
            rhs = spec.op(spec.op(X, Z), spec.op(Y, Z))
        else:
            rhs = spec.op(spec.op(X, Z), Y)
        d = _defect(lhs, np.broadcast_to(rhs, lhs.shape), vec)
        flat = int(np.argmax(d))
        idx = np.unravel_index(flat, d.shape)
        return float(d[idx]), (start + int(idx[0]), int(idx[1]), int(idx[2]))

    starts = range(0, len(xs), step)
    workers = worker_count()
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(chunk, starts))
    else:
        results = [chunk(s) for s in starts]
    # max with first-occurrence tie-break keeps the witness deterministic
    best = results[0]
    for r in results[1:]:
        if r[0] > best[0]:
            best = r
    return best


def _triple_report(spec, axiom, label, xs, ys, zs, tol, identity="distributivity"):
    worst, idx = _sweep_triples(spec, xs, ys, zs, identity)
    witness = None
    if idx is not None:
        witness = (_point(xs[idx[0]], spec.vector), _point(ys[idx[1]], spec.vector), _point(zs[idx[2]], spec.vector))
    return VerificationReport(
        axiom=axiom,
        grid=f"{label}: {len(xs)}x{len(ys)}x{len(zs)} triples",
        max_residual=worst,
        witness=witness,
        passed=worst <= tol,
        tol=tol,
    )


def _proof_cases(spec: ClosedInterval, pts: np.ndarray, tol: float) -> tuple[VerificationReport, ...]:
    """Targeted subgrids for the case split of the two-piece interval quandle."""
    mid = (spec.a + spec.b) / 2
    half = (spec.b - spec.a) / 2
    lo_half, hi_half = pts[pts <= mid], pts[pts >= mid]
    z_right = pts[pts > mid]
    z_left = pts[pts <= mid]
    cases = [
        _triple_report(spec, "self_distributivity", "z<=mid", pts, pts, z_left, tol),
        _triple_report(spec, "self_distributivity", "case1 x,y>=mid z>mid", hi_half, hi_half, z_right, tol),
        _triple_report(spec, "self_distributivity", "case2 x,y<=mid z>mid", lo_half, lo_half, z_right, tol),
        _triple_report(spec, "self_distributivity", "case3 x>=mid y<=mid z>mid", hi_half, lo_half, z_right, tol),
        _triple_report(spec, "self_distributivity", "case4 x<=mid y>=mid z>mid", lo_half, hi_half, z_right, tol),
        _triple_report(spec, "case4_swap", "case4 f(f(x,y),z)=f(f(x,z),y)", lo_half, hi_half, z_right, tol, "swap"),
    ]
    # both sides of the case-4 identity equal a + half*t**(h(eps) h(eps'))
    X = lo_half[:, None, None]
    Y = hi_half[None, :, None]
    Z = z_right[None, None, :]
    h = spec.exponent
    closed = spec.a + half * np.power((X - spec.a) / half, h(Z - mid) * h(Y - mid))
    lhs = spec.op(spec.op(X, Y), Z)
    d = np.abs(lhs - closed)
    if d.size:
        idx = np.unravel_index(int(np.argmax(d)), d.shape)
        worst = float(d[idx])
        witness = (float(lo_half[idx[0]]), float(hi_half[idx[1]]), float(z_right[idx[2]]))
    else:
        worst, witness = 0.0, None
    cases.append(
        VerificationReport(
            axiom="case4_closed_form",
            grid=f"case4 closed form: {d.size} triples",
            max_residual=worst,
            witness=witness,
            passed=worst <= tol,
            tol=tol,
        )
    )
    return tuple(cases)


def verify_distributivity(spec: ContinuumSpec, grid: int = 101, tol: float = DEFAULT_TOL) -> VerificationReport:
    """Max of |f(f(x,y),z) - f(f(x,z),f(y,z))| over all sampled triples.

    Two-piece interval specs additionally get the targeted case subgrids.
    A residual above ``tol`` is reported, never raised.
    """
    pts = spec.sample(grid)
    full = _triple_report(spec, "self_distributivity", spec.kind, pts, pts, pts, tol)
    cases: tuple[VerificationReport, ...] = ()
    if isinstance(spec, ClosedInterval):
        cases = _proof_cases(spec, pts, tol)
    return VerificationReport(
        axiom="self_distributivity",
        grid=_grid_label(spec, grid, len(pts), 3),
        max_residual=full.max_residual,
        witness=full.witness,
        passed=full.passed and all(c.passed for c in cases),
        tol=tol,
        cases=cases,
    )


# -- homeomorphism and closure ----------------------------------------------


def _lines(spec: ContinuumSpec, grid: int) -> list[np.ndarray]:
    """Sample points grouped into lines along the first coordinate."""
    pts = spec.sample(grid)
    if not spec.vector:
        return [np.sort(pts)]
    keys = np.round(pts[:, 1:], 12)
    # group by the other coordinates, then sort along the first
    order = np.lexsort((pts[:, 0],) + tuple(keys.T[::-1]))
    pts = pts[order]
    keys = keys[order]
    lines, start = [], 0
    for i in range(1, len(pts) + 1):
        if i == len(pts) or np.any(keys[i] != keys[start]):
            lines.append(pts[start:i])
            start = i
    return lines


def verify_homeomorphism(
    spec: ContinuumSpec, y, grid: int = 10_000, tol: float = DEFAULT_TOL, inverse_tol: float = INVERSE_TOL
) -> VerificationReport:
    """Check that R_y is a homeomorphism of the sampled domain.

    On 1-d domains R_y must be strictly increasing, fix closed endpoints and
    satisfy R_y(R_y^-1(x)) = x on the samples. On balls the same is checked along every
    sampled line parallel to the first axis, and the other coordinates must
    not move.
    """
    y = np.asarray(y, dtype=float)
    worst_mono, worst_end, worst_inv, worst_other, worst_back = 0.0, 0.0, 0.0, 0.0, 0.0
    strict = True
    escaped = 0
    witness = None
    witness_score = -1.0
    lines = _lines(spec, grid)
    for line in lines:
        img = spec.op(line, y)
        first = img[:, 0] if spec.vector else img
        diffs = np.diff(first)
        if len(diffs) and np.any(diffs <= 0):
            strict = False
            j = int(np.argmin(diffs))
            worst_mono = max(worst_mono, float(-diffs[j]))
            if witness_score < np.inf:
                witness, witness_score = (_point(line[j], spec.vector), _point(line[j + 1], spec.vector)), np.inf
        # R_y(R_y^-1(x)) = x is the well-conditioned direction; the reverse
        # loses digits wherever R_y flattens out near a fixed endpoint
        inv_err = _defect(spec.op(spec.rmul_inv(line, y), y), line, spec.vector)
        back_err = _defect(spec.rmul_inv(img, y), line, spec.vector)
        worst_back = max(worst_back, float(np.max(back_err)) if len(back_err) else 0.0)
        k = int(np.argmax(inv_err))
        if inv_err[k] > worst_inv:
            worst_inv = float(inv_err[k])
            if worst_inv > witness_score:
                witness, witness_score = (_point(line[k], spec.vector),), worst_inv
        if spec.vector:
            worst_other = max(worst_other, float(np.max(np.abs(img[:, 1:] - line[:, 1:]))))
        escaped += int(np.count_nonzero(~spec.contains(img)))
    if not spec.vector and spec.closed:
        lo, hi = spec.bounds()
        ends = spec.op(np.array([lo, hi]), y)
        worst_end = float(max(abs(ends[0] - lo), abs(ends[1] - hi)))
    residual = max(worst_mono, worst_end, worst_other, worst_inv)
    passed = strict and worst_end <= tol and worst_other <= tol and worst_inv <= inverse_tol and escaped == 0
    return VerificationReport(
        axiom="homeomorphism",
        grid=f"{spec.kind}: {grid} per axis, {sum(len(l) for l in lines)} samples in {len(lines)} lines",
        max_residual=residual,
        witness=witness,
        passed=passed,
        tol=tol,
        details={
            "y": _point(y, spec.vector),
            "strictly_increasing": strict,
            "monotonicity_violation": worst_mono,
            "endpoint_error": worst_end,
            "other_coordinate_error": worst_other,
            "inverse_roundtrip_error": worst_inv,
            "backward_roundtrip_error": worst_back,
            "inverse_tol": inverse_tol,
            "points_leaving_domain": escaped,
        },
    )


def verify_closure(spec: ContinuumSpec, grid: int = 21) -> VerificationReport:
    """Does f map sampled pairs back into the domain?"""
    pts = spec.sample(grid)
    sl = (slice(None),) if spec.vector else ()
    out = spec.op(pts[(slice(None), None) + sl], pts[(None, slice(None)) + sl])
    outside = ~spec.contains(out)
    count = int(np.count_nonzero(outside))
    witness = None
    excess = 0.0
    if count:
        if spec.vector:
            # distance past the boundary in unit-ball coordinates
            u = (out - spec._c) / spec.radius if spec.kind == "ball" else out
            score = np.where(outside, np.sqrt(np.sum(u * u, axis=-1)) - 1.0, -np.inf)
        else:
            lo, hi = spec.bounds()
            score = np.where(outside, np.maximum(lo - out, out - hi), -np.inf)
        i, j = np.unravel_index(int(np.argmax(score)), score.shape)
        excess = float(score[i, j])
        witness = (_point(pts[i], spec.vector), _point(pts[j], spec.vector))
    return VerificationReport(
        axiom="closure",
        grid=_grid_label(spec, grid, len(pts), 2),
        max_residual=max(excess, 0.0),
        witness=witness,
        passed=count == 0,
        details={"pairs_leaving_domain": count},
    )


# -- trivial locus ----------------------------------------------------------


def max_displacement(spec: ContinuumSpec, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """max over ys of |f(x, y) - x| for each x."""
    vec = spec.vector
    sl = (slice(None),) if vec else ()
    step = max(1, _CHUNK_ELEMENTS // max(len(ys) * spec.dim, 1))
    out = np.empty(len(xs))
    Y = ys[(None, slice(None)) + sl]
    for s in range(0, len(xs), step):
        X = xs[(slice(s, s + step), None) + sl]
        out[s : s + step] = _defect(spec.op(X, Y), np.broadcast_to(X, np.broadcast(X, Y).shape), vec).max(axis=1)
    return out


def trivial_locus(spec: ContinuumSpec, grid: int = 2001, tol: float = DEFAULT_TOL) -> LocusReport:
    """Components of {x : f(x, y) = x for all sampled y}.

    One-dimensional specs report the trivial locus as closed intervals plus
    isolated grid points. Ball-type specs report the number of connected
    components of the nontrivial locus instead.
    """
    if not spec.vector:
        xs = np.sort(spec.sample(grid))
        trivial = max_displacement(spec, xs, xs) <= tol
        intervals, points = [], []
        i = 0
        while i < len(xs):
            if not trivial[i]:
                i += 1
                continue
            j = i
            while j + 1 < len(xs) and trivial[j + 1]:
                j += 1
            if j > i:
                intervals.append((float(xs[i]), float(xs[j])))
            else:
                points.append(float(xs[i]))
            i = j + 1
        return LocusReport(
            kind="trivial",
            grid=grid,
            tol=tol,
            intervals=tuple(intervals),
            points=tuple(points),
            component_count=len(intervals) + len(points),
            whole_domain=bool(trivial.all()),
        )
    if isinstance(spec, FamilyOmegaN) and grid > 21:
        raise ValueError("ball-family locus grids are limited to 21 points per axis")
    lo, hi = spec.bounds()
    axis = np.arange(grid) / (grid - 1) * (hi - lo) + lo
    mesh = np.stack(np.meshgrid(*([axis] * spec.dim), indexing="ij"), axis=-1)
    flat = mesh.reshape(-1, spec.dim)
    inside = spec.contains(flat)
    pts = flat[inside]
    moved = np.zeros(len(flat), dtype=bool)
    moved[inside] = max_displacement(spec, pts, pts) > tol
    labels, count = ndimage.label(moved.reshape(mesh.shape[:-1]))
    return LocusReport(
        kind="nontrivial",
        grid=grid,
        tol=tol,
        component_count=int(count),
        whole_domain=bool(moved[inside].all()) if len(pts) else False,
    )


# -- certificate ------------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    verdict: str  # "nonisomorphic" or "inconclusive"
    reason: str
    locus1: LocusReport
    locus2: LocusReport

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "reason": self.reason,
            "locus1": self.locus1.to_dict(),
            "locus2": self.locus2.to_dict(),
        }


_INTERVAL_KINDS = (FamilyFn, ClosedInterval, TrivialSpace)


def nonisomorphism_certificate(
    spec1: ContinuumSpec, spec2: ContinuumSpec, grid: int = 2001, tol: float = DEFAULT_TOL
) -> Certificate:
    """Separate two quandles on the same space by the topology of their trivial loci.

    An isomorphism is a homeomorphism carrying one trivial locus onto the
    other, so it preserves the number of positive-length components and
    whether the locus is the whole space. Agreement proves nothing.
    """
    if isinstance(spec1, _INTERVAL_KINDS) and isinstance(spec2, _INTERVAL_KINDS):
        if spec1.bounds() != spec2.bounds():
            raise ValueError("both quandles must live on the same interval")
        l1, l2 = trivial_locus(spec1, grid, tol), trivial_locus(spec2, grid, tol)
        if l1.interval_count != l2.interval_count:
            return Certificate(
                "nonisomorphic",
                f"trivial loci have {l1.interval_count} vs {l2.interval_count} positive-length components",
                l1,
                l2,
            )
        if l1.whole_domain != l2.whole_domain:
            return Certificate("nonisomorphic", "exactly one trivial locus is the whole interval", l1, l2)
        return Certificate("inconclusive", "trivial-locus invariants agree", l1, l2)
    if isinstance(spec1, FamilyOmegaN) and isinstance(spec2, FamilyOmegaN):
        if spec1.dim != spec2.dim:
            raise ValueError("both quandles must live on the same ball")
        g = min(grid, 21)
        l1, l2 = trivial_locus(spec1, g, tol), trivial_locus(spec2, g, tol)
        if l1.component_count != l2.component_count:
            return Certificate(
                "nonisomorphic",
                f"nontrivial loci have {l1.component_count} vs {l2.component_count} components",
                l1,
                l2,
            )
        return Certificate("inconclusive", "nontrivial-locus component counts agree", l1, l2)
    raise ValueError("certificate needs two closed-interval quandles or two ball families")
