"""Truncated Laurent series over a finite field.

A :class:`LaurentSeries` stores coefficients for exponents
``val, val+1, ..., prec-1`` as a ``(prec - val, k)`` integer array (one
F_p-vector per coefficient).  Terms at exponent ``>= prec`` are unknown,
and every operation propagates that uncertainty pessimistically, so a
result never claims digits it does not know.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional

import numpy as np
from scipy.signal import convolve2d

from .errors import PrecisionError
from .finitefield import GF


class LaurentSeries:
    """Element of ``GF((w))`` known modulo ``w^prec``."""

    __slots__ = ("field", "val", "coeffs", "prec")

    def __init__(self, field: GF, val: int, coeffs, prec: int, normalize: bool = True):
        self.field = field
        c = np.asarray(coeffs, dtype=np.int64).reshape(-1, field.k) % field.p
        n = prec - val
        if n < 0:
            c = c[:0]
            val = prec
        elif c.shape[0] < n:
            c = np.vstack([c, np.zeros((n - c.shape[0], field.k), dtype=np.int64)])
        elif c.shape[0] > n:
            c = c[:n]
        if normalize:
            nz = np.flatnonzero(c.any(axis=1))
            if nz.size == 0:
                val, c = prec, c[:0]
            elif nz[0]:
                val += int(nz[0])
                c = c[nz[0]:]
        self.val, self.coeffs, self.prec = int(val), c, int(prec)

    # -- constructors --------------------------------------------------
    @classmethod
    def zero(cls, field: GF, prec: int) -> "LaurentSeries":
        return cls(field, prec, np.zeros((0, field.k)), prec)

    @classmethod
    def monomial(cls, field: GF, coeff: int, exponent: int, prec: int) -> "LaurentSeries":
        if prec <= exponent or coeff == 0:
            return cls.zero(field, prec)
        c = np.zeros((prec - exponent, field.k), dtype=np.int64)
        c[0] = field.vec[coeff]
        return cls(field, exponent, c, prec, normalize=False)

    @classmethod
    def one(cls, field: GF, prec: int) -> "LaurentSeries":
        return cls.monomial(field, 1, 0, prec)

    @classmethod
    def from_dict(cls, field: GF, terms: dict, prec: int) -> "LaurentSeries":
        if not terms:
            return cls.zero(field, prec)
        lo = min(terms)
        c = np.zeros((max(prec - lo, 0), field.k), dtype=np.int64)
        for e, a in terms.items():
            if e < prec:
                c[e - lo] = field.vec[a]
        return cls(field, lo, c, prec)

    # -- inspection ----------------------------------------------------
    def is_zero(self) -> bool:
        """True when zero to the known precision."""
        return self.coeffs.shape[0] == 0

    def valuation(self) -> int:
        if self.is_zero():
            raise PrecisionError("valuation of a series that is zero to precision")
        return self.val

    def coefficient(self, n: int) -> int:
        if n >= self.prec:
            raise PrecisionError(f"coefficient {n} is beyond precision {self.prec}")
        if n < self.val:
            return 0
        return self.field.from_vec(self.coeffs[n - self.val])

    def leading(self) -> int:
        return self.coefficient(self.valuation())

    def terms(self) -> dict:
        F = self.field
        rows = self.coeffs @ F._pw
        return {self.val + i: int(a) for i, a in enumerate(rows) if a}

    def rel_prec(self) -> int:
        return self.prec - self.val

    def __repr__(self):
        t = self.terms()
        if not t:
            return f"O(w^{self.prec})"
        parts = [f"{a}*w^{e}" for e, a in list(t.items())[:6]]
        more = " + ..." if len(t) > 6 else ""
        return " + ".join(parts) + more + f" + O(w^{self.prec})"

    def to_json(self) -> dict:
        return {"val_offset": self.val, "coeffs": self.coeffs.tolist(), "prec": self.prec}

    @classmethod
    def from_json(cls, field: GF, d: dict) -> "LaurentSeries":
        return cls(field, int(d["val_offset"]), np.array(d["coeffs"], dtype=np.int64).reshape(-1, field.k), int(d["prec"]))

    # -- ring operations -----------------------------------------------
    def _aligned(self, other: "LaurentSeries"):
        prec = min(self.prec, other.prec)
        lo = min(self.val, other.val, prec)
        n = prec - lo
        a = np.zeros((n, self.field.k), dtype=np.int64)
        b = np.zeros((n, self.field.k), dtype=np.int64)
        m = max(0, min(self.prec, prec) - self.val)
        if m:
            a[self.val - lo:self.val - lo + m] = self.coeffs[:m]
        m = max(0, min(other.prec, prec) - other.val)
        if m:
            b[other.val - lo:other.val - lo + m] = other.coeffs[:m]
        return lo, a, b, prec

    def __add__(self, other):
        if isinstance(other, int):
            return self.add_scalar(self.field.from_int(other))
        lo, a, b, prec = self._aligned(other)
        return LaurentSeries(self.field, lo, a + b, prec)

    def __sub__(self, other):
        if isinstance(other, int):
            return self.add_scalar(self.field.from_int(-other))
        lo, a, b, prec = self._aligned(other)
        return LaurentSeries(self.field, lo, a - b, prec)

    def __neg__(self):
        return LaurentSeries(self.field, self.val, -self.coeffs, self.prec, normalize=False)

    def add_scalar(self, a: int, exponent: int = 0) -> "LaurentSeries":
        """Add the exact monomial ``a w^exponent`` (precision unchanged)."""
        if a == 0 or exponent >= self.prec:
            return self
        lo = min(self.val, exponent)
        c = np.zeros((self.prec - lo, self.field.k), dtype=np.int64)
        c[self.val - lo:] = self.coeffs
        c[exponent - lo] += self.field.vec[a]
        return LaurentSeries(self.field, lo, c, self.prec)

    def scale(self, a: int) -> "LaurentSeries":
        """Multiply by the field element a."""
        if a == 0:
            return LaurentSeries.zero(self.field, self.prec)
        return LaurentSeries(self.field, self.val, self.field.mul_vec_scalar(self.coeffs, a), self.prec, normalize=False)

    def shift(self, n: int) -> "LaurentSeries":
        """Multiply by ``w^n``."""
        return LaurentSeries(self.field, self.val + n, self.coeffs, self.prec + n, normalize=False)

    def truncate(self, prec: int) -> "LaurentSeries":
        if prec >= self.prec:
            return self
        return LaurentSeries(self.field, self.val, self.coeffs, prec)

    def __mul__(self, other):
        F = self.field
        if isinstance(other, int):
            return self.scale(F.from_int(other))
        if self.is_zero() or other.is_zero():
            if self.is_zero() and other.is_zero():
                prec = self.prec + other.prec
            elif self.is_zero():
                prec = self.prec + other.val
            else:
                prec = other.prec + self.val
            return LaurentSeries.zero(F, prec)
        prec = min(self.prec + other.val, other.prec + self.val)
        val = self.val + other.val
        n = prec - val
        a = self.coeffs[:n]
        b = other.coeffs[:n]
        if F.k == 1:
            c = np.convolve(a[:, 0], b[:, 0])[:n, None]
        else:
            c = convolve2d(a, b)[:n]
            c = F.reduce_poly(c)
        return LaurentSeries(F, val, c, prec)

    __rmul__ = __mul__

    def inverse(self) -> "LaurentSeries":
        v = self.valuation()
        F = self.field
        n = self.rel_prec()
        unit = LaurentSeries(F, 0, self.coeffs, n, normalize=False)
        a0 = F.inv(unit.leading())
        # Newton iteration x <- x (2 - u x) doubles correct digits
        x = LaurentSeries.monomial(F, a0, 0, 1)
        k = 1
        while k < n:
            k = min(2 * k, n)
            u = unit.truncate(k)
            x = LaurentSeries(F, 0, x.coeffs, k, normalize=False)
            x = x * (-(u * x)).add_scalar(2 % F.p)
        return LaurentSeries(F, -v, x.coeffs, n - v)

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, n: int) -> "LaurentSeries":
        if n < 0:
            return self.inverse() ** (-n)
        F = self.field
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        if result is None:
            return LaurentSeries.one(F, self.prec - self.val if not self.is_zero() else self.prec)
        return result

    def agrees(self, other: "LaurentSeries") -> bool:
        return (self - other).is_zero()

    # -- substitution and Frobenius ------------------------------------
    def compose(self, g: "LaurentSeries") -> "LaurentSeries":
        """Return ``self(g)`` for g of positive valuation."""
        F = self.field
        vg = g.valuation()
        if vg <= 0:
            raise ValueError("can only substitute series of positive valuation")
        if self.is_zero():
            return LaurentSeries.zero(F, self.prec * vg)
        v = self.val
        # Horner on the power-series part, starting from the unknown tail
        acc = LaurentSeries.zero(F, 0)
        rows = self.coeffs @ F._pw
        for i in range(len(rows) - 1, -1, -1):
            acc = acc * g
            acc = acc.add_scalar(int(rows[i]))
        if v:
            acc = acc * (g ** v)
        return acc

    def frobenius(self, j: int) -> "LaurentSeries":
        """Apply the residue automorphism ``a -> a^(p^j)`` to every coefficient."""
        F = self.field
        if F.k == 1 or j % F.k == 0:
            return self
        return LaurentSeries(F, self.val, (self.coeffs @ F.frob_matrix(j)) % F.p, self.prec, normalize=False)

    def pth_power(self) -> "LaurentSeries":
        """``self**p`` computed as Frobenius plus exponent spreading."""
        F = self.field
        p = F.p
        c = (self.coeffs @ F.frob_matrix(1)) % F.p
        n = self.coeffs.shape[0]
        out = np.zeros((max(p * n - (p - 1), 0) if n else 0, F.k), dtype=np.int64)
        if n:
            out[::p] = c
        # (a + O(w^N))^p = a^p + O(w^(pN)) in characteristic p
        return LaurentSeries(F, p * self.val, out, p * self.prec)

    def unit_power(self, q: Fraction) -> "LaurentSeries":
        """``self**q`` for a unit with constant term 1 and q in Z_(p)."""
        F = self.field
        q = Fraction(q)
        if q.denominator % F.p == 0:
            raise ValueError("exponent must be p-integral")
        if self.valuation() != 0 or self.leading() != 1:
            raise ValueError("unit_power needs a series of the form 1 + O(w)")
        x = self.add_scalar(F.from_int(-1))
        n = self.rel_prec()
        if x.is_zero():
            return LaurentSeries.one(F, self.prec)
        # binomial coefficients reduced mod p
        coeffs = [1]
        b = Fraction(1)
        for i in range(1, n):
            b = b * (q - i + 1) / i
            coeffs.append(b.numerator * pow(b.denominator, -1, F.p) % F.p)
        acc = LaurentSeries.zero(F, 0)
        for i in range(n - 1, -1, -1):
            acc = acc * x
            acc = acc.add_scalar(F.from_int(coeffs[i]))
        return acc.truncate(self.prec)
