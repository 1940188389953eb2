"""Pipeline constants, derived from the homogeneity exponent c1.

All of c2..c5 and eps are kept as exact rationals so identities such as
``c3 * c4 == 4`` hold exactly rather than up to rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Any, Mapping

from ..ramsey import diagonal_ramsey

OVERRIDABLE = ("m1", "m2", "c2", "c3", "c4", "c5", "eps")


def as_fraction(x: Any) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


@dataclass(frozen=True)
class Constants:
    c1: Fraction
    m1: int
    m2: int
    c2: Fraction
    c3: Fraction
    c4: Fraction
    c5: Fraction
    eps: Fraction
    theoretical: bool
    # "algebraic" is 1/m2 - c2 - c3; see derive_constants
    c5_rule: str = "algebraic"

    @property
    def c5_printed(self) -> Fraction:
        """The alternative (1 - c2 - c3) / m2, kept for the trace."""
        return (1 - self.c2 - self.c3) / self.m2

    def as_dict(self) -> dict[str, str]:
        return {
            "c1": str(self.c1), "m1": str(self.m1), "m2": str(self.m2),
            "c2": str(self.c2), "c3": str(self.c3), "c4": str(self.c4),
            "c5": str(self.c5), "eps": str(self.eps),
            "theoretical": str(int(self.theoretical)), "c5_rule": self.c5_rule,
        }


def m1_condition(c1: float, k: int) -> float:
    """(c1/k) * log2(4 * prod_{l=0}^{k-2} (1 + 1/(l+1))); the product telescopes to k."""
    return (c1 / k) * math.log2(4 * k)


def minimal_m1(c1: Fraction | float) -> int:
    """Least k >= 2 with ``m1_condition(c1, k) <= 1/2``."""
    c = float(c1)
    if c <= 0:
        raise ValueError("c1 must be positive")
    k = 2
    while m1_condition(c, k) > 0.5:
        k += 1
    return k


def constraint_violations(c: Constants, ramsey_table: Mapping[int, int] | None = None) -> list[str]:
    """Every constraint of the derivation that ``c`` fails; empty means theoretical."""
    bad = []
    if c.m1 != minimal_m1(c.c1):
        bad.append(f"m1={c.m1} is not the minimal k for c1={c.c1} ({minimal_m1(c.c1)})")
    if c.m2 < diagonal_ramsey(c.m1, ramsey_table):
        bad.append(f"m2={c.m2} is below the certified threshold for m1={c.m1}")
    if not 0 < c.c2 < Fraction(1, c.m2):
        bad.append("need 0 < c2 < 1/m2")
    if not 0 < c.c3 < Fraction(1, c.m2) - c.c2:
        bad.append("need 0 < c3 < 1/m2 - c2")
    if c.c3 * c.c4 != 4:
        bad.append("need c3 * c4 = 4")
    if not 0 < c.c5 <= Fraction(1, c.m2) - c.c2 - c.c3:
        bad.append("need 0 < c5 <= 1/m2 - c2 - c3")
    if not 0 < c.eps < 1:
        bad.append("need 0 < eps < 1")
    return bad


def derive_constants(
    c1: float | Fraction,
    overrides: Mapping[str, Any] | None = None,
    ramsey_table: Mapping[int, int] | None = None,
) -> Constants:
    """Constants for ``c1``, optionally overriding any of m1, m2, c2..c5, eps.

    Defaults: m1 minimal, m2 = diagonal_ramsey(m1), c2 = 1/(2 m2),
    c3 = 1/(4 m2), c4 = 4/c3, c5 = 1/m2 - c2 - c3, eps = 1/100. The
    ``theoretical`` flag survives overrides only if every constraint still
    holds.
    """
    c1 = as_fraction(c1)
    if c1 <= 0:
        raise ValueError("c1 must be positive")
    ov = dict(overrides or {})
    unknown = set(ov) - set(OVERRIDABLE)
    if unknown:
        raise ValueError(f"unknown constant overrides: {sorted(unknown)}")

    m1 = int(ov["m1"]) if "m1" in ov else minimal_m1(c1)
    if m1 < 1:
        raise ValueError("m1 must be >= 1")
    m2 = int(ov["m2"]) if "m2" in ov else diagonal_ramsey(m1, ramsey_table)
    if m2 < 1:
        raise ValueError("m2 must be >= 1")
    c2 = as_fraction(ov["c2"]) if "c2" in ov else Fraction(1, 2 * m2)

    if "c3" in ov:
        c3 = as_fraction(ov["c3"])
    elif "c4" in ov:
        c3 = 4 / as_fraction(ov["c4"])
    else:
        c3 = Fraction(1, 4 * m2)
    if c3 <= 0:
        raise ValueError("c3 must be positive")
    c4 = as_fraction(ov["c4"]) if "c4" in ov else 4 / c3
    if c3 * c4 != 4:
        raise ValueError(f"c3 * c4 must equal 4 exactly, got {c3 * c4}")

    c5 = as_fraction(ov["c5"]) if "c5" in ov else Fraction(1, m2) - c2 - c3
    if c5 <= 0:
        raise ValueError(f"c5 must be positive, got {c5}")
    eps = as_fraction(ov["eps"]) if "eps" in ov else Fraction(1, 100)

    c = Constants(c1, m1, m2, c2, c3, c4, c5, eps, theoretical=True)
    return replace(c, theoretical=not constraint_violations(c, ramsey_table))


def desk_constants(c1: float | Fraction = 1) -> Constants:
    """The small-scale override m1 = m2 = 2 under which blocks form at reachable n."""
    return derive_constants(c1, {"m1": 2, "m2": 2})
