"""Affine operations with exact rational parameters and isomorphism decisions.

The one-parameter family on the line is ``x * y = t*x + (1-t)*y`` with
``t != 0``.  Two members are isomorphic exactly when the parameters are
equal; for distinct parameters ``decide_iso_line`` emits a finite,
independently checkable certificate of non-isomorphism.  Certificate cases:

* ``SignMismatch``           opposite parameter signs (translations preserve
                             orientation for t > 0 and reverse it for t < 0).
* ``TrivialVsNontrivial``    exactly one parameter equals 1 (that member is
                             the trivial operation, the other is not).
* ``ScaleAcrossOne``         scaling factors on opposite sides of 1; iterating
                             the relation phi(s1^k) = s2^k phi(1) sends one
                             side to 0 and the other to infinity.  For
                             positive parameters the factor is t itself, for
                             negative ones it is t^2.
* ``RationalBetween``        both t in (0,1): integers m, n with
                             t1^m/(1-t1)^n and t2^m/(1-t2)^n on strictly
                             opposite sides of 1, found as a rational m/n
                             strictly between ln(1-t)/ln(t) values.
* ``RationalBetweenSquared`` the same bracketing with a squared factor: for
                             both t > 1 the pair (t, (t-1)^2), for both t < 0
                             the pair (t^2, 1-t); squaring keeps the scale
                             factors positive so monotonicity applies.

Any normalized isomorphism fixes 0 and 1 and is increasing, and must carry
``s1^m u1^n`` to ``s2^m u2^n`` for the respective scale pairs; a product
below 1 on one side and above 1 on the other is therefore impossible, which
is what the validator checks numerically with a safety margin.  Sign claims
thinner than the margin raise ``IndeterminatePrecision`` rather than
returning a possibly wrong verdict.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import IndeterminatePrecision, InputError
from .quandles import Perm

Rational = Union[int, Fraction]

TWO_PI = 2.0 * math.pi

#: a log-domain sign is trusted only when |value| > MARGIN_COEFF * (|m| + n)
MARGIN_COEFF = 1e-9


def as_param(value: Union[str, int, Fraction]) -> Fraction:
    """Parse an exact nonzero rational parameter ('1/2', '-3', Fraction...)."""
    try:
        t = Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"cannot parse rational parameter {value!r}") from exc
    if t == 0:
        raise InputError("parameter 0 does not give an invertible translation")
    return t


def affine_op(t: Rational, x: Rational, y: Rational) -> Fraction:
    """``t*x + (1-t)*y`` exactly."""
    t = as_param(t)
    return t * Fraction(x) + (1 - t) * Fraction(y)


def circle_op(t: Rational, a: float, b: float) -> float:
    """Angle form ``t*a + (1-t)*b`` reduced to the representative range [0, 2pi).

    Computed on representatives; the result depends on the chosen
    representatives, which this module always keeps in [0, 2pi).
    """
    t = as_param(t)
    if not (0 < t <= 1):
        raise InputError("circle family is parameterized over (0, 1]")
    a %= TWO_PI
    b %= TWO_PI
    return (float(t) * a + float(1 - t) * b) % TWO_PI


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NonIsoCertificate:
    """Finite witness that two parameters give non-isomorphic operations."""

    case: str
    t1: Fraction
    t2: Fraction
    m: Optional[int] = None
    n: Optional[int] = None
    surface: str = "line"

    def swapped(self) -> "NonIsoCertificate":
        """The same evidence with the roles of the parameters exchanged."""
        return NonIsoCertificate(self.case, self.t2, self.t1, self.m, self.n,
                                 self.surface)


@dataclass(frozen=True)
class CertCheck:
    valid: bool
    margin: Optional[float] = None  # min |log-claim|, when the case has one


@dataclass(frozen=True)
class LineDecision:
    isomorphic: bool
    certificate: Optional[NonIsoCertificate] = None


def _ln(q: Fraction) -> float:
    if q <= 0:
        raise InputError(f"log of non-positive rational {q}")
    return math.log(q.numerator) - math.log(q.denominator)


def ratio_unit_interval(t: Fraction) -> float:
    """``ln(1-t)/ln(t)`` for t in (0,1); strictly increasing there."""
    if not (0 < t < 1):
        raise InputError("defined on (0, 1)")
    return _ln(1 - t) / _ln(t)


def ratio_above_one(t: Fraction) -> float:
    """``ln((t-1)^2)/ln(t)`` for t > 1; strictly increasing there."""
    if not t > 1:
        raise InputError("defined on (1, oo)")
    return _ln((t - 1) ** 2) / _ln(t)


def ratio_negative(t: Fraction) -> float:
    """``ln(1-t)/ln(t^2)`` for t < 0, t != -1; strictly monotone on each
    side of -1 with disjoint ranges (negative for |t| < 1, above 1/2 for
    |t| > 1)."""
    if not (t < 0 and t != -1):
        raise InputError("defined on negative t other than -1")
    return _ln(1 - t) / _ln(t * t)


# ---------------------------------------------------------------------------
# smallest-denominator rationals in an interval
# ---------------------------------------------------------------------------

def _simplest_in(lo: Fraction, hi: Fraction) -> Fraction:
    """The smallest-denominator rational strictly inside the open interval.

    Descends the mediant tree: integers first, then ``i + 1/y`` with ``y``
    simplest in the reciprocal interval.  Among several integers the one
    nearest ``lo`` is returned, matching the tree's search order.
    """
    if not lo < hi:
        raise InputError("empty interval")
    if lo < 0 < hi:
        return Fraction(0)
    if hi <= 0:
        return -_simplest_in(-hi, -lo)
    # 0 <= lo < hi
    i = lo.numerator // lo.denominator
    if i + 1 < hi:
        return Fraction(i + 1)
    if lo == i:
        width = hi - i
        y = (width.denominator // width.numerator) + 1
        return i + Fraction(1, y)
    return i + 1 / _simplest_in(1 / (hi - i), 1 / (lo - i))


def rational_between(lo: Union[float, Fraction], hi: Union[float, Fraction],
                     min_width: float = 1e-12) -> Fraction:
    """Smallest-denominator rational strictly between ``lo`` and ``hi``.

    Floats are taken at their exact binary value.  Interval widths at or
    below ``min_width`` raise ``IndeterminatePrecision``: at that scale the
    endpoints themselves are not trustworthy.
    """
    flo, fhi = Fraction(lo), Fraction(hi)
    if not flo < fhi:
        raise InputError(f"need lo < hi, got {float(flo)} >= {float(fhi)}")
    if fhi - flo <= Fraction(min_width):
        raise IndeterminatePrecision(
            f"interval width {float(fhi - flo):.3e} is below {min_width:.0e}")
    return _simplest_in(flo, fhi)


def _simplest_below(hi: float) -> Fraction:
    """Greatest integer strictly below ``hi`` (denominator-1 certificate)."""
    f = Fraction(hi)
    i = f.numerator // f.denominator
    return Fraction(i if i < f else i - 1)


def _simplest_above(lo: float) -> Fraction:
    f = Fraction(lo)
    return Fraction(f.numerator // f.denominator + 1)


# ---------------------------------------------------------------------------
# decisions
# ---------------------------------------------------------------------------

def _bracket_certificate(case: str, t1: Fraction, t2: Fraction,
                         r1: float, r2: float, surface: str) -> NonIsoCertificate:
    q = rational_between(min(r1, r2), max(r1, r2))
    return NonIsoCertificate(case, t1, t2, q.numerator, q.denominator, surface)


def decide_iso_line(t1: Union[str, int, Fraction],
                    t2: Union[str, int, Fraction]) -> LineDecision:
    """Isomorphic exactly when the parameters coincide; else a certificate.

    Every returned certificate is re-validated before it leaves this
    function, so a NonIso verdict always carries checkable evidence.
    """
    t1, t2 = as_param(t1), as_param(t2)
    if t1 == t2:
        return LineDecision(True)

    if (t1 < 0) != (t2 < 0):
        cert = NonIsoCertificate("SignMismatch", t1, t2)
    elif t1 > 0:
        if (t1 == 1) != (t2 == 1):
            cert = NonIsoCertificate("TrivialVsNontrivial", t1, t2)
        elif (t1 - 1) * (t2 - 1) < 0:
            cert = NonIsoCertificate("ScaleAcrossOne", t1, t2)
        elif t1 > 1:
            cert = _bracket_certificate("RationalBetweenSquared", t1, t2,
                                        ratio_above_one(t1), ratio_above_one(t2),
                                        "line")
        else:
            cert = _bracket_certificate("RationalBetween", t1, t2,
                                        ratio_unit_interval(t1),
                                        ratio_unit_interval(t2), "line")
    else:
        # both negative; the scale pair is (t^2, 1-t), both positive
        if (t1 * t1 - 1) * (t2 * t2 - 1) < 0:
            cert = NonIsoCertificate("ScaleAcrossOne", t1, t2)
        elif t1 == -1 or t2 == -1:
            # t^2 = 1 pins the m-exponent factor to 1; any rational beyond
            # the other ratio (toward the pole at -1) separates the pair
            other = t2 if t1 == -1 else t1
            rho = ratio_negative(other)
            q = _simplest_below(rho) if abs(other) < 1 else _simplest_above(rho)
            cert = NonIsoCertificate("RationalBetweenSquared", t1, t2,
                                     q.numerator, q.denominator)
        else:
            cert = _bracket_certificate("RationalBetweenSquared", t1, t2,
                                        ratio_negative(t1), ratio_negative(t2),
                                        "line")

    check = validate_certificate(cert)
    if not check.valid:
        raise AssertionError(f"internal: generated certificate failed: {cert}")
    return LineDecision(False, cert)


def decide_iso_circle(t1: Union[str, int, Fraction],
                      t2: Union[str, int, Fraction]) -> LineDecision:
    """Circle family over (0, 1]; same certificate machinery as the line."""
    t1, t2 = as_param(t1), as_param(t2)
    for t in (t1, t2):
        if not (0 < t <= 1):
            raise InputError("circle family is parameterized over (0, 1]")
    if t1 == t2:
        return LineDecision(True)
    if (t1 == 1) != (t2 == 1):
        cert = NonIsoCertificate("TrivialVsNontrivial", t1, t2, surface="circle")
    else:
        cert = _bracket_certificate("RationalBetween", t1, t2,
                                    ratio_unit_interval(t1),
                                    ratio_unit_interval(t2), "circle")
    check = validate_certificate(cert)
    if not check.valid:
        raise AssertionError(f"internal: generated certificate failed: {cert}")
    return LineDecision(False, cert)


def decide_iso_diag(ts: Sequence[Union[str, int, Fraction]],
                    ss: Sequence[Union[str, int, Fraction]]) -> Optional[Perm]:
    """Diagonal-parameter families are isomorphic iff the entry multisets match.

    Returns a permutation ``p`` with ``ts[p[i]] == ss[i]`` (a relabeling of
    coordinates), or None.  Absence is exact: diagonal matrices are conjugate
    only when their diagonals agree as multisets.
    """
    ta = [as_param(t) for t in ts]
    sa = [as_param(s) for s in ss]
    if len(ta) != len(sa):
        raise InputError("parameter vectors must have equal length")
    if sorted(ta) != sorted(sa):
        return None
    order_t = sorted(range(len(ta)), key=lambda i: ta[i])
    order_s = sorted(range(len(sa)), key=lambda i: sa[i])
    p = [0] * len(ta)
    for it, isx in zip(order_t, order_s):
        p[isx] = it
    return tuple(p)


# ---------------------------------------------------------------------------
# certificate validation
# ---------------------------------------------------------------------------

def _signed_claims(cert: NonIsoCertificate) -> Optional[tuple[float, float]]:
    """The two log-domain quantities whose strict signs must differ."""
    m, n = cert.m, cert.n
    if m is None or n is None or n < 1:
        return None
    t1, t2 = cert.t1, cert.t2
    if cert.case == "RationalBetween":
        if not (0 < t1 < 1 and 0 < t2 < 1):
            return None
        return (m * _ln(t1) - n * _ln(1 - t1),
                m * _ln(t2) - n * _ln(1 - t2))
    if cert.case == "RationalBetweenSquared":
        if t1 > 1 and t2 > 1:
            return (m * _ln(t1) - n * _ln((t1 - 1) ** 2),
                    m * _ln(t2) - n * _ln((t2 - 1) ** 2))
        if t1 < 0 and t2 < 0:
            return (m * _ln(t1 * t1) - n * _ln(1 - t1),
                    m * _ln(t2 * t2) - n * _ln(1 - t2))
        return None
    return None


def validate_certificate(cert: NonIsoCertificate,
                         margin_coeff: float = MARGIN_COEFF) -> CertCheck:
    """Recheck a certificate from scratch; tampering yields ``valid=False``.

    Sign-based cases are exact rational comparisons.  Bracketing cases
    compare two logarithmic quantities against zero and demand a margin of
    ``margin_coeff * (|m| + n)``; anything closer raises
    ``IndeterminatePrecision`` so that a rounded sign can never flip a
    verdict.
    """
    t1, t2 = cert.t1, cert.t2
    if t1 == 0 or t2 == 0 or t1 == t2:
        return CertCheck(False)
    if cert.case == "SignMismatch":
        return CertCheck((t1 < 0) != (t2 < 0))
    if cert.case == "TrivialVsNontrivial":
        return CertCheck((t1 == 1) != (t2 == 1))
    if cert.case == "ScaleAcrossOne":
        if t1 > 0 and t2 > 0:
            return CertCheck((t1 - 1) * (t2 - 1) < 0)
        if t1 < 0 and t2 < 0:
            return CertCheck((t1 * t1 - 1) * (t2 * t2 - 1) < 0)
        return CertCheck(False)
    if cert.case in ("RationalBetween", "RationalBetweenSquared"):
        claims = _signed_claims(cert)
        if claims is None:
            return CertCheck(False)
        a, b = claims
        threshold = margin_coeff * (abs(cert.m) + cert.n)
        margin = min(abs(a), abs(b))
        if margin <= threshold:
            raise IndeterminatePrecision(
                f"log-domain margin {margin:.3e} at or below policy "
                f"threshold {threshold:.3e}")
        return CertCheck(a * b < 0, margin)
    return CertCheck(False)
