"""Built-in phase and weight functions with exact derivatives."""

from dataclasses import dataclass
from typing import Tuple

import numpy as np
from numpy.polynomial import Polynomial

PHASE_KINDS = ("quadratic", "exponential", "polynomial", "identity")
WEIGHT_KINDS = ("constant", "polynomial")


def _as_tuple(coefficients):
    if np.isscalar(coefficients):
        coefficients = (coefficients,)
    values = tuple(float(c) for c in coefficients)
    if not values or not np.all(np.isfinite(values)):
        raise ValueError(f"invalid coefficients {coefficients!r}")
    return values


@dataclass(frozen=True)
class PhaseSpec:
    """
    Smooth phase function.

    ``quadratic`` coefficients are (c2, c1, c0), ``exponential`` is
    exp(scale * t), ``polynomial`` coefficients are in ascending order and
    ``identity`` is the linear phase t used only for plumbing checks.
    """

    kind: str
    coefficients: Tuple[float, ...] = ()

    def __post_init__(self):
        if self.kind not in PHASE_KINDS:
            raise ValueError(
                f"unknown phase kind {self.kind!r}, use one of {PHASE_KINDS}"
            )
        if self.kind == "quadratic" and len(self.coefficients) != 3:
            raise ValueError("quadratic phase needs (c2, c1, c0)")
        if self.kind == "exponential" and (
            len(self.coefficients) != 1 or self.coefficients[0] == 0.0
        ):
            raise ValueError("exponential phase needs one non-zero scale")
        if self.kind == "polynomial" and not self.coefficients:
            raise ValueError("polynomial phase needs coefficients")

    @classmethod
    def quadratic(cls, c2, c1=0.0, c0=0.0):
        return cls("quadratic", _as_tuple((c2, c1, c0)))

    @classmethod
    def exponential(cls, scale=1.0):
        return cls("exponential", _as_tuple(scale))

    @classmethod
    def polynomial(cls, coefficients):
        return cls("polynomial", _as_tuple(coefficients))

    @classmethod
    def identity(cls):
        return cls("identity", ())

    @classmethod
    def from_dict(cls, doc):
        kind = doc.get("kind")
        coefficients = doc.get("coefficients", ())
        if kind == "identity":
            return cls.identity()
        return cls(kind, _as_tuple(coefficients))

    def as_dict(self):
        return {"kind": self.kind, "coefficients": list(self.coefficients)}

    @property
    def linear(self):
        return self.kind == "identity"

    @property
    def poly(self):
        """The phase as a numpy Polynomial, ``None`` for the exponential kind."""
        if self.kind == "quadratic":
            c2, c1, c0 = self.coefficients
            return Polynomial((c0, c1, c2))
        if self.kind == "polynomial":
            return Polynomial(self.coefficients)
        if self.kind == "identity":
            return Polynomial((0.0, 1.0))
        return None

    def value(self, t):
        if self.kind == "exponential":
            return np.exp(self.coefficients[0] * np.asarray(t, dtype=float))
        return self.poly(np.asarray(t, dtype=float))

    def d1(self, t):
        if self.kind == "exponential":
            s = self.coefficients[0]
            return s * np.exp(s * np.asarray(t, dtype=float))
        return self.poly.deriv(1)(np.asarray(t, dtype=float))

    def d2(self, t):
        if self.kind == "exponential":
            s = self.coefficients[0]
            return s * s * np.exp(s * np.asarray(t, dtype=float))
        return self.poly.deriv(2)(np.asarray(t, dtype=float))


@dataclass(frozen=True)
class WeightSpec:
    """Amplitude g: ``constant`` (c,) or ascending ``polynomial`` coefficients."""

    kind: str = "constant"
    coefficients: Tuple[float, ...] = (1.0,)

    def __post_init__(self):
        if self.kind not in WEIGHT_KINDS:
            raise ValueError(
                f"unknown weight kind {self.kind!r}, use one of {WEIGHT_KINDS}"
            )
        if self.kind == "constant" and len(self.coefficients) != 1:
            raise ValueError("constant weight needs exactly one coefficient")

    @classmethod
    def constant(cls, c=1.0):
        return cls("constant", _as_tuple(c))

    @classmethod
    def polynomial(cls, coefficients):
        return cls("polynomial", _as_tuple(coefficients))

    @classmethod
    def from_dict(cls, doc):
        return cls(doc.get("kind", "constant"), _as_tuple(doc.get("coefficients", 1.0)))

    def as_dict(self):
        return {"kind": self.kind, "coefficients": list(self.coefficients)}

    @property
    def is_constant(self):
        return self.kind == "constant" or len(Polynomial(self.coefficients).trim()) <= 1

    @property
    def poly(self):
        return Polynomial(self.coefficients)

    def value(self, t):
        t = np.asarray(t, dtype=float)
        if self.kind == "constant":
            return np.full_like(t, self.coefficients[0])
        return self.poly(t)

    def d1(self, t):
        t = np.asarray(t, dtype=float)
        if self.kind == "constant":
            return np.zeros_like(t)
        return self.poly.deriv(1)(t)
