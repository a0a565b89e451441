"""Exact bivariate polynomial operations ``x * y = P(x, y)`` over the rationals.

Self-distributivity of a polynomial operation is decidable by expanding both
sides of ``P(P(x,y),z) = P(P(x,z),P(y,z))`` as trivariate polynomials with
exact rational arithmetic and comparing coefficients.  The distributive
operations split into a short taxonomy (``classify_distributive``): affine
``a*x + (1-a)*y``, operations not involving ``y`` at all, and everything
else is reported for review rather than silently binned.

Text format: terms joined with ``+``/``-``, factors joined with ``*``,
powers written ``x^4`` (or ``x**4``), coefficients integers or fractions,
e.g. ``x^4*y^5 + 2*x^3 - x``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, Optional, Tuple

from .errors import GuardExceeded, InputError

Monomial = Tuple[int, int]
Tri = Dict[Tuple[int, int, int], Fraction]


@dataclass(frozen=True)
class Poly2:
    """Immutable sparse polynomial in x and y with Fraction coefficients.

    ``terms`` holds ``(deg_x, deg_y, coefficient)`` triples, sorted, with no
    zero coefficients.  Build instances with ``from_dict`` or ``parse``.
    """

    terms: Tuple[Tuple[int, int, Fraction], ...]

    @classmethod
    def from_dict(cls, coeffs: Dict[Monomial, Fraction]) -> "Poly2":
        items = []
        for (dx, dy), c in coeffs.items():
            c = Fraction(c)
            if dx < 0 or dy < 0:
                raise InputError("negative exponents are not polynomial")
            if c != 0:
                items.append((dx, dy, c))
        return cls(tuple(sorted(items)))

    @classmethod
    def parse(cls, text: str) -> "Poly2":
        return parse_poly(text)

    def coeffs(self) -> Dict[Monomial, Fraction]:
        return {(dx, dy): c for dx, dy, c in self.terms}

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        if not self.terms:
            raise InputError("the zero polynomial has no degree data")
        return max(dx + dy for dx, dy, _ in self.terms)

    def evaluate(self, x: Fraction, y: Fraction) -> Fraction:
        x, y = Fraction(x), Fraction(y)
        return sum((c * x ** dx * y ** dy for dx, dy, c in self.terms),
                   Fraction(0))

    def diagonal(self) -> Dict[int, Fraction]:
        """Coefficients of the univariate ``P(w, w)``."""
        out: Dict[int, Fraction] = {}
        for dx, dy, c in self.terms:
            d = dx + dy
            s = out.get(d, Fraction(0)) + c
            if s:
                out[d] = s
            else:
                out.pop(d, None)
        return out

    def depends_on_y(self) -> bool:
        return any(dy > 0 for _, dy, _ in self.terms)

    def __str__(self) -> str:
        return poly_text(self)


# ---------------------------------------------------------------------------
# text form
# ---------------------------------------------------------------------------

_ALLOWED = set("0123456789xy^*/+-")


def parse_poly(text: str) -> Poly2:
    s = text.replace("**", "^").replace(" ", "")
    if not s:
        raise InputError("empty polynomial text")
    bad = set(s) - _ALLOWED
    if bad:
        raise InputError(f"unexpected characters {sorted(bad)} in {text!r}")

    chunks: list[str] = []
    cur = ""
    for ch in s:
        if ch in "+-" and cur and cur[-1] not in "+-*/^":
            chunks.append(cur)
            cur = ""
        cur += ch
    chunks.append(cur)

    coeffs: Dict[Monomial, Fraction] = {}
    for chunk in chunks:
        sign = Fraction(1)
        while chunk and chunk[0] in "+-":
            if chunk[0] == "-":
                sign = -sign
            chunk = chunk[1:]
        if not chunk:
            raise InputError(f"dangling sign in {text!r}")
        coeff = sign
        dx = dy = 0
        for factor in chunk.split("*"):
            if not factor:
                raise InputError(f"empty factor in {text!r}")
            if factor[0] in "xy":
                var, caret, exp = factor.partition("^")
                if var not in ("x", "y"):
                    raise InputError(f"bad factor {factor!r} in {text!r}")
                power = 1
                if caret:
                    try:
                        power = int(exp)
                    except ValueError as e:
                        raise InputError(f"bad exponent in {factor!r}") from e
                if power < 0:
                    raise InputError("negative exponents are not polynomial")
                if var == "x":
                    dx += power
                else:
                    dy += power
            else:
                try:
                    coeff *= Fraction(factor)
                except (ValueError, ZeroDivisionError) as e:
                    raise InputError(f"bad coefficient {factor!r}") from e
        key = (dx, dy)
        coeffs[key] = coeffs.get(key, Fraction(0)) + coeff
    return Poly2.from_dict(coeffs)


def _factor_text(dx: int, dy: int, c: Fraction) -> str:
    parts = []
    if abs(c) != 1 or (dx == 0 and dy == 0):
        parts.append(str(abs(c)))
    if dx:
        parts.append("x" if dx == 1 else f"x^{dx}")
    if dy:
        parts.append("y" if dy == 1 else f"y^{dy}")
    return "*".join(parts)


def poly_text(p: Poly2) -> str:
    if not p.terms:
        return "0"
    ordered = sorted(p.terms, key=lambda t: (-(t[0] + t[1]), -t[0]))
    out = ""
    for dx, dy, c in ordered:
        if not out:
            out = ("-" if c < 0 else "") + _factor_text(dx, dy, c)
        else:
            out += (" - " if c < 0 else " + ") + _factor_text(dx, dy, c)
    return out


# ---------------------------------------------------------------------------
# degree data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DegreeStats:
    """(f_x, f_y, f_xy) where f_x is the top x-degree among y-free monomials,
    f_y the top y-degree among x-free monomials, and f_xy the exact degree of
    P(w, w), with None when the diagonal collapses to zero."""

    f_x: int
    f_y: int
    f_xy: Optional[int]


def degree_stats(p: Poly2) -> DegreeStats:
    if p.is_zero():
        raise InputError("the zero polynomial has no degree data")
    f_x = max((dx for dx, dy, _ in p.terms if dy == 0), default=0)
    f_y = max((dy for dx, dy, _ in p.terms if dx == 0), default=0)
    diag = p.diagonal()
    f_xy = max(diag) if diag else None
    return DegreeStats(f_x, f_y, f_xy)


# ---------------------------------------------------------------------------
# trivariate expansion machinery
# ---------------------------------------------------------------------------

def embed3(p: Poly2, pos_x: int, pos_y: int) -> Tri:
    """View P as a trivariate polynomial with its variables at the given
    coordinate slots (0, 1, 2)."""
    if pos_x == pos_y or not {pos_x, pos_y} <= {0, 1, 2}:
        raise InputError("need two distinct slots among 0, 1, 2")
    out: Tri = {}
    for dx, dy, c in p.terms:
        key = [0, 0, 0]
        key[pos_x] = dx
        key[pos_y] = dy
        out[tuple(key)] = out.get(tuple(key), Fraction(0)) + c
    return {k: v for k, v in out.items() if v}


def var3(slot: int) -> Tri:
    key = [0, 0, 0]
    key[slot] = 1
    return {tuple(key): Fraction(1)}


def _tri_mul(a: Tri, b: Tri) -> Tri:
    out: Tri = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = (ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2])
            s = out.get(k, Fraction(0)) + ca * cb
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out


def substitute3(p: Poly2, first: Tri, second: Tri) -> Tri:
    """Expand P(first, second) where both arguments are trivariate."""
    one: Tri = {(0, 0, 0): Fraction(1)}
    pow_first = [one]
    pow_second = [one]
    for dx, dy, _ in p.terms:
        while len(pow_first) <= dx:
            pow_first.append(_tri_mul(pow_first[-1], first))
        while len(pow_second) <= dy:
            pow_second.append(_tri_mul(pow_second[-1], second))
    out: Tri = {}
    for dx, dy, c in p.terms:
        for k, v in _tri_mul(pow_first[dx], pow_second[dy]).items():
            s = out.get(k, Fraction(0)) + c * v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out


def eval3(d: Tri, a: Fraction, b: Fraction, c: Fraction) -> Fraction:
    return sum((v * a ** k[0] * b ** k[1] * c ** k[2] for k, v in d.items()),
               Fraction(0))


# ---------------------------------------------------------------------------
# distributivity
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DistributivityReport:
    distributive: bool
    witness: Optional[Tuple[Fraction, Fraction, Fraction]] = None
    lhs: Optional[Fraction] = None
    rhs: Optional[Fraction] = None


def _witness_points() -> Iterator[Fraction]:
    """Deterministic stream of distinct rationals, small and simple first."""
    seen = set()
    for q in (Fraction(0), Fraction(1), Fraction(1, 2), Fraction(-1),
              Fraction(2), Fraction(-1, 2), Fraction(1, 3), Fraction(2, 3),
              Fraction(-2), Fraction(3)):
        seen.add(q)
        yield q
    for k in itertools.count(4):
        for q in (Fraction(k), Fraction(-k + 1), Fraction(1, k),
                  Fraction(k - 1, k)):
            if q not in seen:
                seen.add(q)
                yield q


def _find_witness(diff: Tri) -> Tuple[Fraction, Fraction, Fraction]:
    """A rational triple where a nonzero trivariate polynomial is nonzero.

    Tries a curated list of simple points, then falls back to the complete
    grid {0..deg}^3, on which a nonzero polynomial of per-variable degree
    <= deg cannot vanish everywhere.  Deterministic and always terminates.
    """
    simple = list(itertools.islice(_witness_points(), 8))
    for a, b, c in itertools.product(simple, repeat=3):
        if eval3(diff, a, b, c) != 0:
            return (a, b, c)
    deg = max(max(k) for k in diff)
    grid = [Fraction(i) for i in range(deg + 1)]
    for a, b, c in itertools.product(grid, repeat=3):
        if eval3(diff, a, b, c) != 0:
            return (a, b, c)
    raise AssertionError("internal: nonzero polynomial vanished on full grid")


def is_distributive(p: Poly2, max_total_degree: int = 12) -> DistributivityReport:
    """Decide ``P(P(x,y),z) == P(P(x,z),P(y,z))`` by exact expansion.

    Refuses inputs of total degree beyond ``max_total_degree``; the expanded
    sides have degree up to the square of the input degree.
    """
    if p.is_zero():
        return DistributivityReport(True)
    if p.total_degree() > max_total_degree:
        raise GuardExceeded(
            f"total degree {p.total_degree()} exceeds bound {max_total_degree}")
    x, y, z = var3(0), var3(1), var3(2)
    lhs = substitute3(p, substitute3(p, x, y), z)
    rhs = substitute3(p, substitute3(p, x, z), substitute3(p, y, z))
    diff = dict(lhs)
    for k, v in rhs.items():
        s = diff.get(k, Fraction(0)) - v
        if s:
            diff[k] = s
        else:
            diff.pop(k, None)
    if not diff:
        return DistributivityReport(True)
    a, b, c = _find_witness(diff)
    lv = p.evaluate(p.evaluate(a, b), c)
    rv = p.evaluate(p.evaluate(a, c), p.evaluate(b, c))
    if lv == rv:
        raise AssertionError("internal: witness does not separate the sides")
    return DistributivityReport(False, (a, b, c), lv, rv)


# ---------------------------------------------------------------------------
# taxonomy of distributive operations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Classification:
    """kind is one of 'affine', 'right_independent', 'not_distributive',
    'anomalous'.  affine carries the parameter a of a*x + (1-a)*y;
    right_independent carries the univariate right part; not_distributive
    carries the separating triple; anomalous flags a distributive,
    y-dependent, non-affine operation for manual review."""

    kind: str
    parameter: Optional[Fraction] = None
    right_part: Optional[Poly2] = None
    witness: Optional[Tuple[Fraction, Fraction, Fraction]] = None


def classify_distributive(p: Poly2,
                          max_total_degree: int = 12) -> Classification:
    report = is_distributive(p, max_total_degree)
    if not report.distributive:
        return Classification("not_distributive", witness=report.witness)
    if not p.depends_on_y():
        return Classification("right_independent", right_part=p)
    coeffs = p.coeffs()
    if set(coeffs) <= {(1, 0), (0, 1)}:
        a = coeffs.get((1, 0), Fraction(0))
        b = coeffs.get((0, 1), Fraction(0))
        if a + b == 1:
            return Classification("affine", parameter=a)
    return Classification("anomalous")


@dataclass(frozen=True)
class IntervalVerdict:
    """Whether the operation restricts to a quandle structure on [0, 1].

    kinds: 'trivial_op' (the only way it can), 'violates_idempotency'
    (witness point with P(w) != w), 'violates_boundary' (affine parameter
    a != 1 moves an endpoint), 'needs_review' (anomalous classification)."""

    kind: str
    parameter: Optional[Fraction] = None
    witness: Optional[Fraction] = None


def interval_quandle_verdict(p: Poly2,
                             max_total_degree: int = 12) -> IntervalVerdict:
    cls = classify_distributive(p, max_total_degree)
    if cls.kind == "not_distributive":
        raise InputError("verdict is defined for distributive operations only")
    if cls.kind == "anomalous":
        return IntervalVerdict("needs_review")
    if cls.kind == "affine":
        if cls.parameter == 1:
            return IntervalVerdict("trivial_op")
        return IntervalVerdict("violates_boundary", parameter=cls.parameter)
    # right-independent: x * y = q(x); idempotency forces q(x) = x everywhere
    q = cls.right_part
    if q.coeffs() == {(1, 0): Fraction(1)}:
        return IntervalVerdict("trivial_op")
    for w in _witness_points():
        if q.evaluate(w, Fraction(0)) != w:
            return IntervalVerdict("violates_idempotency", witness=w)
    raise AssertionError("internal: q != x but q - x has no witness")
