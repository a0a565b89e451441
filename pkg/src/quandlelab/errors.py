"""Shared exception types and the validation report record.

Exit-code mapping used by the CLI lives in ``cli.py``; library code raises
these exceptions and never calls ``sys.exit`` itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional


class InputError(ValueError):
    """Malformed or out-of-contract input (bad table shape, zero parameter, ...)."""


class GuardExceeded(RuntimeError):
    """A size guard refused the computation.

    Guards are explicit and overridable at the call site; this is never a
    silent truncation.
    """


class IndeterminatePrecision(ArithmeticError):
    """A floating-point sign claim fell below the acceptance margin.

    Raised instead of guessing, so a verdict is never wrong merely because
    of rounding.
    """


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of an axiom check.

    ``ok`` is True when every axiom holds.  Otherwise ``axiom`` names the
    first violated axiom (checks run in a fixed documented order) and
    ``witness`` is a tuple of element indices exhibiting the violation.
    """

    ok: bool
    axiom: Optional[str] = None
    witness: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.ok
