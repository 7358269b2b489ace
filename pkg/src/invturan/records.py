"""Bound records with provenance, shared by the solver, constructions and reports."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional


def fmt_rational(x):
    if x is None:
        return None
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class BoundRecord:
    """A lower or upper bound (or a conjectured value) for ex(G,F) or ex^-1(k,F).

    ``provenance`` is "<source>:<name>" with source one of formula, certificate,
    exact or conjectured.  ``value`` is an exact rational, or None when the
    quantity is only an asymptotic order (then ``expression`` carries it and
    ``approx`` a float evaluation of the leading term).
    """

    kind: str
    value: Optional[Fraction]
    provenance: str
    certified: bool = False
    asymptotic: bool = False
    expression: str = ""
    approx: Optional[float] = None
    quantity: str = ""
    extra: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.kind not in ("lower", "upper", "value"):
            raise ValueError(f"kind must be lower/upper/value, got {self.kind!r}")
        if self.value is not None and not isinstance(self.value, Fraction):
            object.__setattr__(self, "value", Fraction(self.value))
        if self.certified and (self.value is None or self.asymptotic):
            raise ValueError("certified records need an exact, non-asymptotic value")
        if self.certified and self.provenance.startswith("conjectured"):
            raise ValueError("conjectured values can never be certified")

    @property
    def conjectured(self):
        return self.provenance.startswith("conjectured")

    def to_json(self):
        d = {
            "kind": self.kind,
            "quantity": self.quantity,
            "value": fmt_rational(self.value),
            "provenance": self.provenance,
            "certified": self.certified,
            "asymptotic": self.asymptotic,
        }
        if self.expression:
            d["expression"] = self.expression
        if self.approx is not None:
            d["approx"] = round(self.approx, 6)
        if self.extra:
            d["extra"] = self.extra
        return d
