"""Exact piecewise-linear functions on [0, oo) with f(0) = 0.

A :class:`PLFun` is stored as interior break points ``b_1 < ... < b_k``
and ``k + 1`` slopes; slope ``i`` applies on ``[b_i, b_{i+1}]`` with
``b_0 = 0``.  Everything is a Fraction, so composition and inversion are
exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from .rationals import fmt, rat


class PLFun:
    """Continuous, strictly increasing piecewise-linear map with f(0) = 0."""

    __slots__ = ("breaks", "slopes", "_values")

    def __init__(self, breaks: Sequence, slopes: Sequence):
        breaks = [rat(b) for b in breaks]
        slopes = [rat(s) for s in slopes]
        if len(slopes) != len(breaks) + 1:
            raise ValueError("need exactly one more slope than break points")
        if any(s <= 0 for s in slopes):
            raise ValueError("slopes must be positive")
        prev = Fraction(0)
        for b in breaks:
            if b <= prev:
                raise ValueError("break points must be positive and ascending")
            prev = b
        # merge segments whose slopes agree, so equality is structural
        nb, ns = [], [slopes[0]]
        for b, s in zip(breaks, slopes[1:]):
            if s == ns[-1]:
                continue
            nb.append(b)
            ns.append(s)
        self.breaks: Tuple[Fraction, ...] = tuple(nb)
        self.slopes: Tuple[Fraction, ...] = tuple(ns)
        vals = [Fraction(0)]
        x0 = Fraction(0)
        for b, s in zip(self.breaks, self.slopes):
            vals.append(vals[-1] + s * (b - x0))
            x0 = b
        self._values = tuple(vals)

    @classmethod
    def identity(cls) -> "PLFun":
        return cls([], [1])

    @classmethod
    def from_points(cls, points: Iterable[Tuple], final_slope) -> "PLFun":
        """Build from vertices ``(x, f(x))`` (starting after the origin)."""
        pts = [(Fraction(0), Fraction(0))] + [(rat(x), rat(y)) for x, y in points]
        breaks, slopes = [], []
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            slopes.append((y1 - y0) / (x1 - x0))
            breaks.append(x1)
        slopes.append(rat(final_slope))
        return cls(breaks, slopes)

    def __call__(self, x) -> Fraction:
        x = rat(x)
        if x < 0:
            raise ValueError("PLFun is defined on x >= 0 only")
        x0 = Fraction(0)
        for i, b in enumerate(self.breaks):
            if x <= b:
                return self._values[i] + self.slopes[i] * (x - x0)
            x0 = b
        return self._values[-1] + self.slopes[-1] * (x - x0)

    def vertices(self) -> List[Tuple[Fraction, Fraction]]:
        return list(zip(self.breaks, self._values[1:]))

    def inverse(self) -> "PLFun":
        return PLFun([y for _, y in self.vertices()], [1 / s for s in self.slopes])

    def compose(self, inner: "PLFun") -> "PLFun":
        """Return ``self o inner``."""
        xs = set(inner.breaks)
        xs.update(inner.inverse()(b) for b in self.breaks)
        xs = sorted(xs)
        pts = [(x, self(inner(x))) for x in xs]
        last = self.slopes[-1] * inner.slopes[-1]
        return PLFun.from_points(pts, last)

    def __matmul__(self, other: "PLFun") -> "PLFun":
        return self.compose(other)

    def __eq__(self, other):
        if not isinstance(other, PLFun):
            return NotImplemented
        return self.breaks == other.breaks and self.slopes == other.slopes

    def __hash__(self):
        return hash((self.breaks, self.slopes))

    def __repr__(self):
        b = ", ".join(str(x) for x in self.breaks)
        s = ", ".join(str(x) for x in self.slopes)
        return f"PLFun(breaks=[{b}], slopes=[{s}])"

    def is_concave(self) -> bool:
        return all(a >= b for a, b in zip(self.slopes, self.slopes[1:]))

    def is_convex(self) -> bool:
        return all(a <= b for a, b in zip(self.slopes, self.slopes[1:]))

    def to_json(self) -> dict:
        def sl(s):
            return int(s) if s.denominator == 1 else fmt(s)

        return {"breaks": [fmt(b) for b in self.breaks], "slopes": [sl(s) for s in self.slopes]}

    @classmethod
    def from_json(cls, d: dict) -> "PLFun":
        return cls([rat(b) for b in d["breaks"]], [rat(s) if isinstance(s, str) else s for s in d["slopes"]])

    def segments(self) -> List[dict]:
        """Tabular dump: one row per segment with start point, value, slope."""
        starts = [Fraction(0)] + list(self.breaks)
        return [
            {"x": fmt(x), "y": fmt(y), "slope": fmt(s)}
            for x, y, s in zip(starts, self._values, self.slopes)
        ]
