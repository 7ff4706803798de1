"""Exact checks for polynomial quandle and rack operations on [0, 1].

All arithmetic is over :class:`fractions.Fraction`; no verdict depends on
floating point.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

DEGREE_CAP = 32

# -- univariate helpers (coefficient lists, lowest degree first) -------------

UPoly = list  # list[Fraction]


def _trim(p: UPoly) -> UPoly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _deg(p: UPoly) -> int:
    return len(p) - 1  # -1 for the zero polynomial


def _sub(p: UPoly, q: UPoly) -> UPoly:
    n = max(len(p), len(q))
    return _trim([(p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0) for i in range(n)])


def _mul(p: UPoly, q: UPoly) -> UPoly:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def _divmod(p: UPoly, q: UPoly) -> tuple[UPoly, UPoly]:
    q = _trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = _trim(p)
    quot = [Fraction(0)] * max(len(r) - len(q) + 1, 0)
    while len(r) >= len(q):
        c = r[-1] / q[-1]
        shift = len(r) - len(q)
        quot[shift] = c
        r = _sub(r, [Fraction(0)] * shift + [c * v for v in q])
    return _trim(quot), r


def derivative(p: UPoly) -> UPoly:
    return _trim([i * c for i, c in enumerate(p)][1:])


def _monic(p: UPoly) -> UPoly:
    return [c / p[-1] for c in p] if p else []


def _gcd(p: UPoly, q: UPoly) -> UPoly:
    p, q = _trim(p), _trim(q)
    while q:
        p, q = q, _divmod(p, q)[1]
    return _monic(p)


def evaluate_univariate(p: UPoly, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def squarefree_decomposition(p: UPoly) -> list[UPoly]:
    """Yun's algorithm: factors f_1, f_2, ... with p = c * prod f_i**i."""
    p = _trim(p)
    if _deg(p) < 1:
        return []
    dp = derivative(p)
    a = _gcd(p, dp)
    b = _divmod(p, a)[0]
    c = _divmod(dp, a)[0]
    d = _sub(c, derivative(b))
    factors = []
    while _deg(b) >= 1:
        a = _gcd(b, d)
        factors.append(a)
        b = _divmod(b, a)[0]
        c = _divmod(d, a)[0]
        d = _sub(c, derivative(b))
    return factors


def sturm_sequence(p: UPoly) -> list[UPoly]:
    seq = [_trim(p), derivative(p)]
    while seq[-1]:
        r = _divmod(seq[-2], seq[-1])[1]
        if not r:
            break
        seq.append([-c for c in r])
    return [s for s in seq if s]


def _sign_changes(seq: list[UPoly], x) -> int:
    signs = [v for v in (evaluate_univariate(s, x) for s in seq) if v != 0]
    return sum(1 for u, v in zip(signs, signs[1:]) if (u > 0) != (v > 0))


def count_roots(p: UPoly, lo, hi) -> int:
    """Number of distinct real roots of ``p`` in the open interval (lo, hi)."""
    p = _trim([Fraction(c) for c in p])
    if not p:
        raise ValueError("the zero polynomial has infinitely many roots")
    if _deg(p) < 1:
        return 0
    q = _divmod(p, _gcd(p, derivative(p)))[0]  # square-free part, same roots
    lo, hi = Fraction(lo), Fraction(hi)
    for end in (lo, hi):
        if evaluate_univariate(q, end) == 0:
            q = _divmod(q, [-end, Fraction(1)])[0]
    seq = sturm_sequence(q)
    return _sign_changes(seq, lo) - _sign_changes(seq, hi)


def sign_changing_roots(p: UPoly, lo, hi) -> int:
    """Distinct roots of odd multiplicity in (lo, hi): the places where ``p`` changes sign."""
    total = 0
    for mult, factor in enumerate(squarefree_decomposition(p), start=1):
        if mult % 2 == 1:
            total += count_roots(factor, lo, hi)
    return total


# -- bivariate polynomials --------------------------------------------------


@dataclass(frozen=True)
class RationalBivariatePoly:
    """sum of a_ij x^i y^j with exact rational coefficients and no stored zeros."""

    coeffs: tuple[tuple[tuple[int, int], Fraction], ...]

    @classmethod
    def from_dict(cls, coeffs: Mapping[tuple[int, int], object]) -> "RationalBivariatePoly":
        clean = {}
        for (i, j), c in coeffs.items():
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent in term ({i}, {j})")
            c = Fraction(c)
            if c != 0:
                clean[(int(i), int(j))] = c
        return cls(tuple(sorted(clean.items())))

    @classmethod
    def from_json(cls, data: list | str) -> "RationalBivariatePoly":
        if isinstance(data, str):
            data = json.loads(data)
        terms: dict[tuple[int, int], Fraction] = {}
        for term in data:
            try:
                i, j = int(term["i"]), int(term["j"])
                num, den = int(term["num"]), int(term.get("den", 1))
            except (KeyError, TypeError, ValueError) as exc:
                raise ValueError(f"malformed polynomial term {term!r}: {exc}") from None
            if den == 0:
                raise ValueError(f"zero denominator in term {term!r}")
            terms[(i, j)] = terms.get((i, j), Fraction(0)) + Fraction(num, den)
        return cls.from_dict(terms)

    def to_json(self) -> list[dict]:
        return [
            {"i": i, "j": j, "num": c.numerator, "den": c.denominator} for (i, j), c in self.coeffs
        ]

    @property
    def terms(self) -> dict[tuple[int, int], Fraction]:
        return dict(self.coeffs)

    @property
    def degree(self) -> int:
        return max((i + j for (i, j), _ in self.coeffs), default=-1)

    @property
    def x_degree(self) -> int:
        return max((i for (i, _), _ in self.coeffs), default=-1)

    @property
    def y_degree(self) -> int:
        return max((j for (_, j), _ in self.coeffs), default=-1)

    def __call__(self, x, y) -> Fraction:
        x, y = Fraction(x), Fraction(y)
        return sum((c * x**i * y**j for (i, j), c in self.coeffs), Fraction(0))

    def at_x(self, x) -> UPoly:
        """p(x0, y) as a polynomial in y."""
        x = Fraction(x)
        out = [Fraction(0)] * (self.y_degree + 1)
        for (i, j), c in self.coeffs:
            out[j] += c * x**i
        return _trim(out)

    def diagonal(self) -> UPoly:
        """p(x, x) as a polynomial in x."""
        out = [Fraction(0)] * (self.degree + 1)
        for (i, j), c in self.coeffs:
            out[i + j] += c
        return _trim(out)

    def as_univariate_x(self) -> UPoly:
        if self.y_degree > 0:
            raise ValueError("polynomial depends on y")
        out = [Fraction(0)] * (self.x_degree + 1)
        for (i, _), c in self.coeffs:
            out[i] = c
        return _trim(out)

    def is_projection(self) -> bool:
        """True exactly for p(x, y) = x."""
        return self.coeffs == (((1, 0), Fraction(1)),)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for (i, j), c in self.coeffs:
            mono = "*".join(v for v in (f"x^{i}" if i > 1 else "x" * i, f"y^{j}" if j > 1 else "y" * j) if v)
            if not mono:
                parts.append(str(c))
            elif abs(c) == 1:
                parts.append(mono if c > 0 else f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


# -- trivariate expansion for the distributivity identity -------------------

Poly3 = dict  # {(i, j, k): Fraction}


def _p3_mul(a: Poly3, b: Poly3) -> Poly3:
    out: Poly3 = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = (ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2])
            out[e] = out.get(e, Fraction(0)) + ca * cb
    return {e: c for e, c in out.items() if c}


def _p3_substitute(p: RationalBivariatePoly, first: Poly3, second: Poly3) -> Poly3:
    """p(first, second) with both arguments trivariate."""
    one = {(0, 0, 0): Fraction(1)}
    pow1, pow2 = [one], [one]
    for _ in range(p.x_degree):
        pow1.append(_p3_mul(pow1[-1], first))
    for _ in range(p.y_degree):
        pow2.append(_p3_mul(pow2[-1], second))
    out: Poly3 = {}
    for (i, j), c in p.coeffs:
        for e, v in _p3_mul(pow1[i], pow2[j]).items():
            out[e] = out.get(e, Fraction(0)) + c * v
    return {e: v for e, v in out.items() if v}


def _lift(p: RationalBivariatePoly, a: int, b: int) -> Poly3:
    # p(var_a, var_b) with variables x=0, y=1, z=2
    out: Poly3 = {}
    for (i, j), c in p.coeffs:
        e = [0, 0, 0]
        e[a] += i
        e[b] += j
        out[tuple(e)] = out.get(tuple(e), Fraction(0)) + c
    return out


def distributivity_defect(p: RationalBivariatePoly) -> Poly3:
    """p(p(x,y),z) - p(p(x,z),p(y,z)) expanded exactly."""
    lhs = _p3_substitute(p, _lift(p, 0, 1), {(0, 0, 1): Fraction(1)})
    rhs = _p3_substitute(p, _lift(p, 0, 2), _lift(p, 1, 2))
    out = dict(lhs)
    for e, c in rhs.items():
        out[e] = out.get(e, Fraction(0)) - c
    return {e: c for e, c in out.items() if c}


# -- verdicts ---------------------------------------------------------------


@dataclass(frozen=True)
class Step:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class PolyVerdict:
    status: str  # "forced_trivial" | "violated" | "undetermined" for quandles; "valid" | "rejected" for racks
    steps: tuple[Step, ...]
    message: str

    @property
    def failed_step(self) -> str | None:
        return next((s.name for s in self.steps if not s.passed), None)

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "failed_step": self.failed_step,
            "message": self.message,
            "steps": [{"name": s.name, "passed": s.passed, "detail": s.detail} for s in self.steps],
        }


def _check_cap(p: RationalBivariatePoly) -> None:
    if p.degree > DEGREE_CAP:
        raise ValueError(f"degree {p.degree} exceeds the cap of {DEGREE_CAP}")


def _first_nonzero(coeffs: Iterable[Fraction], expected: dict[int, Fraction] | None = None):
    expected = expected or {}
    coeffs = list(coeffs)
    for k in range(max(len(coeffs), max(expected, default=-1) + 1)):
        have = coeffs[k] if k < len(coeffs) else Fraction(0)
        if have != expected.get(k, Fraction(0)):
            return k, have
    return None


def check_polynomial_quandle(p: RationalBivariatePoly) -> PolyVerdict:
    """Run the coefficient constraints a polynomial quandle on [0, 1] must meet.

    The constraints are p(0,0) = 0, p(0,y) = 0, p(1,y) = 1 and p(x,x) = x,
    in that order, stopping at the first violation. They do not by themselves
    force p = x (for example x + (x - x^2)(y - x) meets all four), so a
    survivor other than x is then tested against the exact
    self-distributivity identity.
    """
    _check_cap(p)
    terms = p.terms
    steps: list[Step] = []

    def stop(message: str) -> PolyVerdict:
        return PolyVerdict("violated", tuple(steps), message)

    a00 = terms.get((0, 0), Fraction(0))
    steps.append(Step("constant_term", a00 == 0, f"a_00 = {a00}"))
    if a00 != 0:
        return stop(f"p(0,0) = {a00} != 0")

    bad = _first_nonzero(p.at_x(0))
    steps.append(Step("vanishes_at_x0", bad is None, "p(0,y) == 0" if bad is None else f"a_0{bad[0]} = {bad[1]}"))
    if bad is not None:
        return stop(f"p(0,y) is not identically 0: a_0{bad[0]} = {bad[1]} != 0")

    bad = _first_nonzero(p.at_x(1), {0: Fraction(1)})
    steps.append(
        Step("fixes_x1", bad is None, "p(1,y) == 1" if bad is None else f"[y^{bad[0]}] p(1,y) = {bad[1]}")
    )
    if bad is not None:
        want = 1 if bad[0] == 0 else 0
        return stop(f"p(1,y) is not identically 1: coefficient of y^{bad[0]} is {bad[1]}, expected {want}")

    bad = _first_nonzero(p.diagonal(), {1: Fraction(1)})
    steps.append(
        Step("idempotent", bad is None, "p(x,x) == x" if bad is None else f"[x^{bad[0]}] p(x,x) = {bad[1]}")
    )
    if bad is not None:
        want = 1 if bad[0] == 1 else 0
        return stop(f"p(x,x) is not x: coefficient of x^{bad[0]} is {bad[1]}, expected {want}")

    if p.is_projection():
        return PolyVerdict("forced_trivial", tuple(steps), "forced trivial: p(x,y) = x")

    witness = _distributivity_witness(p)
    if witness is None and distributivity_defect(p):
        witness = "symbolic"
    if witness is not None:
        where = witness if witness == "symbolic" else "at (x,y,z) = " + ", ".join(map(str, witness))
        steps.append(Step("self_distributive", False, f"identity fails {where}"))
        return stop(f"p passes the coefficient constraints but is not self-distributive ({where})")
    steps.append(Step("self_distributive", True, "p(p(x,y),z) == p(p(x,z),p(y,z))"))
    return PolyVerdict(
        "undetermined",
        tuple(steps),
        "p satisfies every polynomial identity checked but is not x; bijectivity of each R_y is not decided",
    )


def _distributivity_witness(p: RationalBivariatePoly):
    grid = [Fraction(0), Fraction(1), Fraction(1, 2), Fraction(1, 3), Fraction(2, 3)]
    for x, y, z in itertools.product(grid, repeat=3):
        if p(p(x, y), z) != p(p(x, z), p(y, z)):
            return (x, y, z)
    return None


def check_polynomial_rack(p: RationalBivariatePoly) -> PolyVerdict:
    """Decide whether p is a one-variable bijection of [0, 1].

    The derivative may touch zero but must not change sign inside (0, 1);
    sign changes are counted exactly as odd-multiplicity roots.
    """
    _check_cap(p)
    steps: list[Step] = []
    if p.y_degree > 0:
        steps.append(Step("depends_on_x_only", False, f"y-degree {p.y_degree}"))
        return PolyVerdict("rejected", tuple(steps), f"p depends on y (y-degree {p.y_degree})")
    steps.append(Step("depends_on_x_only", True, "y-degree 0"))

    f = p.as_univariate_x()
    ends = (evaluate_univariate(f, 0), evaluate_univariate(f, 1))
    ok = set(ends) == {Fraction(0), Fraction(1)}
    steps.append(Step("endpoints", ok, f"p(0) = {ends[0]}, p(1) = {ends[1]}"))
    if not ok:
        return PolyVerdict("rejected", tuple(steps), "p does not map {0, 1} onto {0, 1}")

    df = derivative(f)
    changes = sign_changing_roots(df, 0, 1)
    steps.append(Step("monotone", changes == 0, f"p' changes sign {changes} times in (0,1)"))
    if changes:
        return PolyVerdict("rejected", tuple(steps), "p is not monotone on [0, 1]")
    direction = "increasing" if ends[1] == 1 else "decreasing"
    return PolyVerdict("valid", tuple(steps), f"p is a strictly {direction} bijection of [0, 1]")
