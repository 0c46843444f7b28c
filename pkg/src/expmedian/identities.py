"""Exact verification of the three combinatorial identities behind the
median-of-three characterizations.

Everything here is integer / rational arithmetic (``int`` and
``fractions.Fraction``); no floating point enters this module.  Each
identity compares a left-hand sum, a right-hand sum, and a closed form:

    T1 (r >= 1):  sum_{j=1}^{r} 3^(r-j) 2^(j-1)
                = sum_{j=1}^{r} C(r,j) (2^j - 1)
                = 3^r - 2^r

    T2 (r >= 2):  sum_{j=2}^{r-1} (2^(j-1) - 1)(C(r,j) - 1)
                = sum_{j=2}^{r-1} (3^j - 2^(j+1) + 1)
                = 3^r/2 - 2^(r+1) + r + 3/2

    T3 (r >= 2):  sum_{j=2}^{r-1} (2^j - 2)(4^(r-j) - C(r,j))
                = sum_{j=2}^{r-1} (3^j - 2^(j+1) + 1)(3 C(r,j+1) - 2*4^(r-j-1))
                = 4^r/3 - 3^r + 2^r - 1/3

The T2/T3 closed forms are kept as exact rationals on purpose: that they
are integer-valued for every r is itself a checked property.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


def pascal_row(r: int) -> list[int]:
    """Binomial coefficients C(r, 0..r) by the in-row Pascal recurrence.

    C(r, j) = C(r, j-1) * (r - j + 1) / j with every division exact, so the
    row is built in arbitrary-precision integers with no factorials.
    """
    if r < 0:
        raise ValueError(f"r must be >= 0, got {r}")
    row = [1]
    for j in range(1, r + 1):
        row.append(row[-1] * (r - j + 1) // j)
    return row


@dataclass(frozen=True)
class IdentityVerdict:
    """Exact values of one identity at one induction index r."""

    r: int
    lhs: Fraction
    rhs: Fraction
    closed_form: Fraction

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs == self.closed_form

    def to_json_dict(self) -> dict:
        return {
            "r": self.r,
            "lhs": _exact_str(self.lhs),
            "rhs": _exact_str(self.rhs),
            "closedForm": _exact_str(self.closed_form),
            "equal": self.equal,
        }


def _exact_str(v: Fraction) -> str:
    if v.denominator == 1:
        return str(v.numerator)
    return f"{v.numerator}/{v.denominator}"


def identity_t1(r: int) -> IdentityVerdict:
    """Both T1 proof sums against the closed form 3^r - 2^r."""
    if r < 1:
        raise ValueError(f"identity T1 needs r >= 1, got {r}")
    lhs = sum(3 ** (r - j) * 2 ** (j - 1) for j in range(1, r + 1))
    binom = pascal_row(r)
    rhs = sum(binom[j] * (2 ** j - 1) for j in range(1, r + 1))
    return IdentityVerdict(r, Fraction(lhs), Fraction(rhs), Fraction(3 ** r - 2 ** r))


def identity_t2(r: int) -> IdentityVerdict:
    """Both T2 proof sums against the closed form 3^r/2 - 2^(r+1) + r + 3/2."""
    if r < 2:
        raise ValueError(f"identity T2 needs r >= 2, got {r}")
    binom = pascal_row(r)
    lhs = sum((2 ** (j - 1) - 1) * (binom[j] - 1) for j in range(2, r))
    rhs = sum(3 ** j - 2 ** (j + 1) + 1 for j in range(2, r))
    closed = Fraction(3 ** r, 2) - 2 ** (r + 1) + r + Fraction(3, 2)
    return IdentityVerdict(r, Fraction(lhs), Fraction(rhs), closed)


def identity_t3(r: int) -> IdentityVerdict:
    """Both T3 proof sums against the closed form 4^r/3 - 3^r + 2^r - 1/3."""
    if r < 2:
        raise ValueError(f"identity T3 needs r >= 2, got {r}")
    binom = pascal_row(r)
    lhs = sum((2 ** j - 2) * (4 ** (r - j) - binom[j]) for j in range(2, r))
    rhs = sum(
        (3 ** j - 2 ** (j + 1) + 1) * (3 * binom[j + 1] - 2 * 4 ** (r - j - 1))
        for j in range(2, r)
    )
    closed = Fraction(4 ** r, 3) - 3 ** r + 2 ** r - Fraction(1, 3)
    return IdentityVerdict(r, Fraction(lhs), Fraction(rhs), closed)


@dataclass(frozen=True)
class IdentityReport:
    """Verdicts for every identity over a range of induction indices."""

    max_r: int
    t1: tuple[IdentityVerdict, ...] = field(default_factory=tuple)
    t2: tuple[IdentityVerdict, ...] = field(default_factory=tuple)
    t3: tuple[IdentityVerdict, ...] = field(default_factory=tuple)

    @property
    def all_equal(self) -> bool:
        return all(v.equal for group in (self.t1, self.t2, self.t3) for v in group)

    def to_json_dict(self) -> dict:
        return {
            "maxR": self.max_r,
            "allEqual": self.all_equal,
            "t1": [v.to_json_dict() for v in self.t1],
            "t2": [v.to_json_dict() for v in self.t2],
            "t3": [v.to_json_dict() for v in self.t3],
        }


def verify_all_identities(max_r: int) -> IdentityReport:
    """Verdicts for T1 over r = 1..max_r and T2/T3 over r = 2..max_r."""
    if max_r < 2:
        raise ValueError(f"max_r must be >= 2, got {max_r}")
    return IdentityReport(
        max_r=max_r,
        t1=tuple(identity_t1(r) for r in range(1, max_r + 1)),
        t2=tuple(identity_t2(r) for r in range(2, max_r + 1)),
        t3=tuple(identity_t3(r) for r in range(2, max_r + 1)),
    )
