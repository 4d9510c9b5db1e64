"""Finite fields F_{p^k} with integer-encoded elements.

An element ``a_0 + a_1 X + ... + a_{k-1} X^{k-1}`` (modulo a fixed
primitive polynomial) is encoded as the integer ``sum a_i p^i``.  The
polynomial is the lexicographically first monic primitive one of degree
k, so the encoding is reproducible across runs.  Scalar arithmetic goes
through log/exp tables; bulk arithmetic on coefficient arrays (used by
the Laurent series) works on the vector form.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import List, Sequence

import numpy as np

from .errors import DomainError
from .rationals import is_prime


def _find_primitive(p: int, k: int):
    """First monic primitive polynomial of degree k, low coefficients first."""
    q = p ** k
    if k == 1:
        for g in range(1, p):
            x, seen = 1, 0
            for i in range(1, p):
                x = x * g % p
                if x == 1:
                    seen = i
                    break
            if seen == p - 1:
                return [(-g) % p, 1]
        raise AssertionError("no generator")  # pragma: no cover
    for tail in product(range(p), repeat=k):
        low = list(reversed(tail))
        if low[0] == 0:
            continue
        # multiply by X repeatedly in F_p[X]/(f); primitive iff order q-1
        v = [1] + [0] * (k - 1)
        one = list(v)
        steps = 0
        while True:
            top = v[-1]
            v = [0] + v[:-1]
            if top:
                v = [(a - top * m) % p for a, m in zip(v, low)]
            steps += 1
            if v == one or steps > q - 1:
                break
        if steps == q - 1 and v == one:
            return low + [1]
    raise AssertionError("no primitive polynomial")  # pragma: no cover


class GF:
    """The field with ``p**k`` elements."""

    def __init__(self, p: int, k: int = 1):
        if not is_prime(p):
            raise DomainError(f"{p} is not prime")
        if k < 1:
            raise DomainError("degree must be positive")
        self.p, self.k = p, k
        self.q = q = p ** k
        self.modulus = _find_primitive(p, k)
        self._low = np.array(self.modulus[:-1], dtype=np.int64)
        vec = np.zeros((q, k), dtype=np.int64)
        for a in range(q):
            x = a
            for i in range(k):
                vec[a, i] = x % p
                x //= p
        self.vec = vec
        self._pw = p ** np.arange(k, dtype=np.int64)
        exp = np.zeros(2 * (q - 1), dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        v = np.zeros(k, dtype=np.int64)
        v[0] = 1
        for i in range(q - 1):
            a = int(v @ self._pw)
            exp[i] = exp[i + q - 1] = a
            log[a] = i
            top = v[-1]
            v = np.concatenate(([0], v[:-1]))
            if top:
                v = (v - top * self._low) % p
        self.exp, self.log = exp, log
        self._add = None
        if q <= 729:
            self._add = ((vec[:, None, :] + vec[None, :, :]) % p) @ self._pw
        self._neg = ((-vec) % p) @ self._pw
        self._frob_cache = {}

    # -- scalar arithmetic ---------------------------------------------
    def __repr__(self):
        return f"GF({self.p}^{self.k})"

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self):
        return hash((self.p, self.k))

    def from_vec(self, v) -> int:
        return int((np.asarray(v, dtype=np.int64) % self.p) @ self._pw)

    def add(self, a: int, b: int) -> int:
        if self._add is not None:
            return int(self._add[a, b])
        return self.from_vec(self.vec[a] + self.vec[b])

    def neg(self, a: int) -> int:
        return int(self._neg[a])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[self.log[a] + self.log[b]])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in a finite field")
        return int(self.exp[(-self.log[a]) % (self.q - 1)])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("0 to a negative power")
            return 1 if n == 0 else 0
        return int(self.exp[(self.log[a] * n) % (self.q - 1)])

    def from_int(self, n: int) -> int:
        """Image of the integer n in the prime field."""
        return n % self.p

    def frob(self, a: int, j: int = 1) -> int:
        return self.pow(a, pow(self.p, j % self.k))

    def trace_to_prime(self, a: int) -> int:
        """Absolute trace down to F_p, returned as an integer in [0, p)."""
        s = 0
        for j in range(self.k):
            s = self.add(s, self.frob(a, j))
        return int(self.vec[s, 0])

    def generator(self) -> int:
        return int(self.exp[1])

    def elements(self) -> range:
        return range(self.q)

    def roots_of_unity(self, m: int) -> List[int]:
        return [a for a in range(1, self.q) if self.pow(a, m) == 1]

    def nth_roots(self, a: int, m: int, sub_deg: int | None = None) -> List[int]:
        """All x (optionally inside F_{p^sub_deg}) with x^m = a."""
        pool = self.subfield(sub_deg) if sub_deg else range(self.q)
        return [x for x in pool if self.pow(x, m) == a] if a else [0]

    # -- subfields -----------------------------------------------------
    @lru_cache(maxsize=None)
    def subfield(self, f: int) -> tuple:
        """Elements of the subfield F_{p^f}, sorted by encoding."""
        if self.k % f:
            raise DomainError(f"F_{self.p}^{f} is not inside {self}")
        qf = self.p ** f
        step = (self.q - 1) // (qf - 1)
        return tuple(sorted([0] + [int(self.exp[step * i]) for i in range(qf - 1)]))

    @lru_cache(maxsize=None)
    def subfield_basis(self, f: int) -> tuple:
        """An F_p-basis of F_{p^f}: powers of a primitive element."""
        if self.k % f:
            raise DomainError(f"F_{self.p}^{f} is not inside {self}")
        h = int(self.exp[(self.q - 1) // (self.p ** f - 1)])
        return tuple(self.pow(h, i) for i in range(f))

    def in_subfield(self, a: int, f: int) -> bool:
        return self.pow(a, self.p ** f) == a

    # -- bulk helpers for coefficient arrays ---------------------------
    def frob_matrix(self, j: int) -> np.ndarray:
        """Matrix M with ``vec(x^(p^j)) = vec(x) @ M`` (mod p)."""
        j %= self.k
        M = self._frob_cache.get(j)
        if M is None:
            basis = [self.from_vec([1 if t == i else 0 for t in range(self.k)]) for i in range(self.k)]
            M = np.array([self.vec[self.frob(b, j)] for b in basis], dtype=np.int64)
            self._frob_cache[j] = M
        return M

    def reduce_poly(self, arr: np.ndarray) -> np.ndarray:
        """Reduce the last axis (polynomial coefficients in X) modulo the field polynomial."""
        k, p = self.k, self.p
        arr = np.array(arr, dtype=np.int64, copy=True)
        d = arr.shape[-1]
        for top in range(d - 1, k - 1, -1):
            c = arr[..., top] % p
            if not c.any():
                continue
            arr[..., top - k:top] -= c[..., None] * self._low
        arr = arr[..., :k] % p
        if arr.shape[-1] < k:
            pad = [(0, 0)] * (arr.ndim - 1) + [(0, k - arr.shape[-1])]
            arr = np.pad(arr, pad)
        return arr

    def scalar_vec(self, a: int) -> np.ndarray:
        return self.vec[a]

    def mul_vec_scalar(self, arr: np.ndarray, a: int) -> np.ndarray:
        """Multiply every row vector of arr by the field element a."""
        if a == 0:
            return np.zeros_like(arr)
        if self.k == 1:
            return (arr * a) % self.p
        # multiplication by a is F_p-linear: rows of A are a * X^i
        A = self._mul_matrix(a)
        return (arr @ A) % self.p

    @lru_cache(maxsize=4096)
    def _mul_matrix(self, a: int) -> np.ndarray:
        basis = [self.from_vec([1 if t == i else 0 for t in range(self.k)]) for i in range(self.k)]
        return np.array([self.vec[self.mul(a, b)] for b in basis], dtype=np.int64)


@lru_cache(maxsize=None)
def get_field(p: int, k: int = 1) -> GF:
    return GF(p, k)

