"""Exact rational enclosures: a midpoint and an error radius."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction


@dataclass(frozen=True)
class RationalEnclosure:
    value: Fraction
    error_bound: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))
        object.__setattr__(self, "error_bound", Fraction(self.error_bound))
        if self.error_bound < 0:
            raise ValueError("error bound must be non-negative")

    @property
    def lo(self) -> Fraction:
        return self.value - self.error_bound

    @property
    def hi(self) -> Fraction:
        return self.value + self.error_bound

    @property
    def width(self) -> Fraction:
        return 2 * self.error_bound

    def contains(self, x) -> bool:
        """Membership test; floats and Decimals are converted exactly."""
        x = Fraction(x)
        return self.lo <= x <= self.hi

    def affine(self, scale, offset=0) -> "RationalEnclosure":
        """Enclosure of scale * v + offset."""
        scale = Fraction(scale)
        return RationalEnclosure(scale * self.value + Fraction(offset), abs(scale) * self.error_bound)

    def __add__(self, other: "RationalEnclosure") -> "RationalEnclosure":
        return RationalEnclosure(self.value + other.value, self.error_bound + other.error_bound)

    def overlaps(self, other: "RationalEnclosure") -> bool:
        return abs(self.value - other.value) <= self.error_bound + other.error_bound

    def contains_surd(self, a, b, d) -> bool:
        """Exact test of lo <= a + b*sqrt(d) <= hi for rational a, b and d >= 0."""
        a, b, d = Fraction(a), Fraction(b), Fraction(d)
        if d < 0:
            raise ValueError("negative radicand")
        if b == 0:
            return self.contains(a)
        lo, hi = (self.lo - a) / b, (self.hi - a) / b
        if b < 0:
            lo, hi = hi, lo
        # lo <= sqrt(d) <= hi
        above_lo = lo < 0 or lo * lo <= d
        below_hi = hi >= 0 and d <= hi * hi
        return above_lo and below_hi

    def has_decimal_prefix(self, literal: str) -> bool:
        """True when every enclosed value, written in decimal, starts with ``literal``."""
        base = Fraction(literal)
        places = len(literal.split(".")[1]) if "." in literal else 0
        ulp = Fraction(1, 10**places)
        if base >= 0:
            return base <= self.lo and self.hi < base + ulp
        return base - ulp < self.lo and self.hi <= base

    def nested_in(self, other: "RationalEnclosure") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def decimal(self, digits: int = 30) -> str:
        with localcontext() as ctx:
            ctx.prec = digits
            return str(Decimal(self.value.numerator) / Decimal(self.value.denominator))

    def to_json(self) -> dict:
        return {"value": frac_str(self.value), "error": frac_str(self.error_bound),
                "decimal": self.decimal(20)}


def frac_str(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(text: str) -> Fraction:
    return Fraction(text.strip())
