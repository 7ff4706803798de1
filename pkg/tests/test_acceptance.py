"""Acceptance criteria, one test each. Every test prints a single PASS/FAIL line."""

import csv
import itertools
import random
import subprocess
import sys
import time
from fractions import Fraction
from math import gcd

import numpy as np
import pytest

from braid_oracle import naive_fixed_points
from qtop.braid import BraidWord, fixed_points
from qtop.continuum import BallOmega, FamilyFn, RealLineArctan, UnitInterval, arctan_chart_spec
from qtop.finite import check_quandle, make_alexander, make_conj, make_core, make_dihedral, make_trivial
from qtop.groups import small_groups
from qtop.polyrack import RationalBivariatePoly, check_polynomial_quandle
from qtop.verify import (
    nonisomorphism_certificate,
    residual_at,
    trivial_locus,
    verify_distributivity,
    verify_homeomorphism,
    verify_idempotency,
)


@pytest.fixture
def verdict(capsys):
    def emit(number: int, ok: bool, detail: str):
        with capsys.disabled():
            print(f"\n[criterion {number}] {'PASS' if ok else 'FAIL'}: {detail}")
        assert ok, detail

    return emit


def test_1_finite_axioms(verdict):
    start = time.perf_counter()
    quandles = [make_trivial(n) for n in range(1, 25)]
    quandles += [make_dihedral(n) for n in range(1, 25)]
    quandles += [make_alexander(n, t) for n in range(2, 25) for t in range(1, n) if gcd(t, n) == 1]
    groups = small_groups(12)
    quandles += [make_conj(g) for g in groups] + [make_core(g) for g in groups]
    failures = [q.label for q in quandles if not check_quandle(q).passed]
    elapsed = time.perf_counter() - start
    verdict(1, not failures and elapsed < 5, f"{len(quandles)} quandles, {len(failures)} failures, {elapsed:.2f}s (< 5s)")


def test_2_unit_interval(verdict):
    start = time.perf_counter()
    u = UnitInterval()
    idem = verify_idempotency(u, 101)
    dist = verify_distributivity(u, 101)
    homeo = [verify_homeomorphism(u, y, 101) for y in u.sample(101)]
    elapsed = time.perf_counter() - start
    cases = {c.grid.split(":")[0]: c.max_residual for c in dist.cases}
    worst = max([idem.max_residual, dist.max_residual] + [h.max_residual for h in homeo] + list(cases.values()))
    ok = (
        idem.passed
        and dist.passed
        and all(h.passed for h in homeo)
        and len(dist.cases) == 7
        and any(c.axiom == "case4_closed_form" for c in dist.cases)
        and worst < 1e-9
        and elapsed < 30
    )
    verdict(2, ok, f"max residual {worst:.3g} over {len(dist.cases)} case subgrids, {elapsed:.2f}s (< 30s)")


def test_3_family_certificates(verdict):
    specs = {n: FamilyFn(n) for n in range(1, 9)}
    counts = {n: trivial_locus(s, 2001, 1e-9).interval_count for n, s in specs.items()}
    bad_pairs = [
        (m, n)
        for m, n in itertools.combinations(specs, 2)
        if nonisomorphism_certificate(specs[m], specs[n], 2001, 1e-9).verdict != "nonisomorphic"
    ]
    ok = all(counts[n] == n for n in specs) and not bad_pairs
    verdict(3, ok, f"component counts {counts}; {28 - len(bad_pairs)}/28 pairs certified nonisomorphic")


def test_4_braid_counts(verdict):
    cases = [("trefoil/R_3", make_dihedral(3), (1, 1, 1), 9),
             ("trefoil/R_5", make_dihedral(5), (1, 1, 1), 5),
             ("unknot/R_3", make_dihedral(3), (1,), 3)]
    results = []
    for name, q, letters, expected in cases:
        got = fixed_points(q, BraidWord(2, letters)).count
        oracle = len(naive_fixed_points([list(r) for r in q.table], 2, letters))
        results.append((name, got, oracle, expected))
    ok = all(g == o == e for _, g, o, e in results)
    verdict(4, ok, "; ".join(f"{n}: {g} (oracle {o}, expected {e})" for n, g, o, e in results))


def test_5_markov(verdict):
    rng = random.Random(20260101)
    pool = [make_trivial(n) for n in range(1, 6)] + [make_dihedral(n) for n in range(1, 6)]
    pool += [make_alexander(n, t) for n in range(2, 6) for t in range(2, n) if gcd(t, n) == 1]

    def random_word(strands, length):
        return BraidWord(strands, tuple(rng.choice([1, -1]) * rng.randint(1, strands - 1) for _ in range(length)))

    mismatches = 0
    for _ in range(100):
        q = rng.choice(pool)
        strands = rng.randint(2, 4)
        w = random_word(strands, rng.randint(0, 6))
        base = fixed_points(q, w).count
        conj = fixed_points(q, w.conjugate(random_word(strands, rng.randint(1, 6)))).count
        stab = [fixed_points(q, w.stabilize(s)).count for s in (1, -1)]
        mismatches += int(conj != base) + sum(int(c != base) for c in stab)
    verdict(5, mismatches == 0, f"100 cases, conjugation + both stabilizations, {mismatches} mismatches")


def _random_poly(rng, degree=6, terms=6):
    coeffs = {}
    for _ in range(rng.randint(1, terms)):
        i = rng.randint(0, degree)
        j = rng.randint(0, degree - i)
        coeffs[(i, j)] = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    return RationalBivariatePoly.from_dict(coeffs)


def _near_miss(rng):
    # x + x(1-x)(y-x) r(x,y) satisfies every coefficient constraint but is not x unless r = 0
    r = _random_poly(rng, degree=3, terms=3)
    base = {(1, 0): Fraction(1)}
    # (x - x^2)(y - x) = xy - x^2 - x^2 y + x^3
    factor = {(1, 1): 1, (2, 0): -1, (2, 1): -1, (3, 0): 1}
    for (i, j), c in r.coeffs:
        for (a, b), f in factor.items():
            base[(i + a, j + b)] = base.get((i + a, j + b), Fraction(0)) + c * f
    return RationalBivariatePoly.from_dict(base)


def test_6_polynomials(verdict):
    rng = random.Random(6)
    x = RationalBivariatePoly.from_dict({(1, 0): 1})
    polys = [_random_poly(rng) for _ in range(600)] + [_near_miss(rng) for _ in range(390)] + [x] * 10
    false_accepts = false_rejects = 0
    for p in polys:
        trivial = check_polynomial_quandle(p).status == "forced_trivial"
        false_accepts += int(trivial and p != x)
        false_rejects += int(not trivial and p == x)
    ok = len(polys) == 1000 and false_accepts == 0 and false_rejects == 0
    verdict(6, ok, f"{len(polys)} polynomials (390 near-misses), {false_accepts} false accepts, {false_rejects} false rejects")


def test_7_chart_vs_closed_form(verdict):
    chart, line = arctan_chart_spec(), RealLineArctan()
    xs = np.linspace(-4, 4, 201)
    X, Y = np.meshgrid(xs, xs, indexing="ij")
    err = float(np.max(np.abs(chart.op(X, Y) - line.op(X, Y))))
    verdict(7, err <= 1e-9, f"max |chart - closed form| = {err:.3g} on 201^2 (<= 1e-9)")


def test_8_ball(verdict):
    faithful = BallOmega(2, "paper-faithful")
    r = verify_distributivity(faithful, 21)
    if r.passed:
        faithful_ok, note = r.max_residual < 1e-9, f"paper-faithful residual {r.max_residual:.3g}"
    else:
        again = residual_at(faithful, "self_distributivity", r.witness)
        faithful_ok = again == r.max_residual
        note = f"paper-faithful residual {r.max_residual:.4g} at witness {r.witness}, re-evaluates to {again:.4g}"
    inv = verify_distributivity(BallOmega(2, "invariant-exponent"), 21)
    ok = faithful_ok and inv.max_residual < 1e-9
    verdict(8, ok, f"{note}; invariant-exponent residual {inv.max_residual:.3g} (< 1e-9)")


def test_9_curves(verdict, tmp_path):
    runs = []
    for k in range(2):
        out = tmp_path / f"curves{k}.csv"
        subprocess.run(
            [sys.executable, "-m", "qtop", "curves", "--epsilons", "0.1,0.3,0.5", "--samples", "200", "--out", str(out)],
            check=True,
        )
        runs.append(out.read_bytes())
    rows = list(csv.DictReader(runs[0].decode().splitlines()))
    columns = {}
    for r in rows:
        columns.setdefault(float(r["epsilon"]), []).append((float(r["x"]), float(r["value"])))
    monotone = all(all(b[1] > a[1] for a, b in zip(col, col[1:])) for col in columns.values())
    fixes = all(dict(col)[0.0] == 0.0 and dict(col)[0.5] == 0.5 for col in columns.values())
    ok = runs[0] == runs[1] and b"\r" not in runs[0] and sorted(columns) == [0.1, 0.3, 0.5] and monotone and fixes
    verdict(9, ok, f"{len(rows)} rows, byte-identical={runs[0] == runs[1]}, monotone={monotone}, fixes 0 and 1/2={fixes}")
