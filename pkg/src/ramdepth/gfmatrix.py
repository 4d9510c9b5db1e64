"""Small dense matrices over a finite field, entries as field encodings."""

from __future__ import annotations

from functools import lru_cache
from typing import List, Sequence, Tuple

from .errors import DomainError
from .finitefield import GF, get_field

Matrix = List[List[int]]


def zeros(n: int) -> Matrix:
    return [[0] * n for _ in range(n)]


def identity(n: int) -> Matrix:
    m = zeros(n)
    for i in range(n):
        m[i][i] = 1
    return m


def matmul(F: GF, a: Matrix, b: Matrix) -> Matrix:
    n, k, m = len(a), len(b), len(b[0])
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        for j in range(m):
            s = 0
            for l in range(k):
                if a[i][l] and b[l][j]:
                    s = F.add(s, F.mul(a[i][l], b[l][j]))
            out[i][j] = s
    return out


def scale(F: GF, c: int, a: Matrix) -> Matrix:
    return [[F.mul(c, x) for x in row] for row in a]


def charpoly(F: GF, a: Matrix) -> Tuple[int, ...]:
    """Coefficients (c_1, ..., c_n) of det(lambda - a) = lambda^n + c_1 lambda^(n-1) + ... + c_n.

    Berkowitz's algorithm: division free, so it is valid in every characteristic.
    """
    n = len(a)
    poly = [1]
    for k in range(n):
        # a_k = [[A, C], [R, d]] with A the leading k x k block
        d = a[k][k]
        R = a[k][:k]
        C = [a[i][k] for i in range(k)]
        col = [1, F.neg(d)]
        v = C[:]
        for _ in range(k):
            s = 0
            for i in range(k):
                if R[i] and v[i]:
                    s = F.add(s, F.mul(R[i], v[i]))
            col.append(F.neg(s))
            v = [_dot(F, a[i][:k], v) for i in range(k)]
        # multiply the lower-triangular Toeplitz matrix with first column col into poly
        new = []
        for i in range(k + 2):
            s = 0
            for j in range(min(i + 1, k + 1)):
                if i - j < len(col) and col[i - j] and poly[j]:
                    s = F.add(s, F.mul(col[i - j], poly[j]))
            new.append(s)
        poly = new
    return tuple(poly[1:])


def _dot(F: GF, u: Sequence[int], v: Sequence[int]) -> int:
    s = 0
    for x, y in zip(u, v):
        if x and y:
            s = F.add(s, F.mul(x, y))
    return s


def det(F: GF, a: Matrix) -> int:
    n = len(a)
    c = charpoly(F, a)[-1] if n else 1
    return c if n % 2 == 0 else F.neg(c)


def inverse(F: GF, a: Matrix) -> Matrix:
    """Gauss-Jordan inverse; raises ZeroDivisionError when singular."""
    n = len(a)
    m = [row[:] + identity(n)[i] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[col], m[piv] = m[piv], m[col]
        inv = F.inv(m[col][col])
        m[col] = [F.mul(inv, x) for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                c = m[r][col]
                m[r] = [F.sub(x, F.mul(c, y)) for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


@lru_cache(maxsize=None)
def embedding(p: int, ka: int, kb: int) -> Tuple[int, ...]:
    """A fixed field embedding GF(p, ka) -> GF(p, kb) as a lookup table.

    The generator of the small field goes to the least encoded root of its
    minimal polynomial inside the big field.
    """
    if kb % ka:
        raise DomainError(f"GF({p}^{ka}) does not embed in GF({p}^{kb})")
    A, B = get_field(p, ka), get_field(p, kb)
    if ka == kb:
        return tuple(range(A.q))
    mod = A.modulus  # low coefficients first, monic

    def ev(x):
        s, xp = 0, 1
        for c in mod:
            if c:
                s = B.add(s, B.mul(B.from_int(c), xp))
            xp = B.mul(xp, x)
        return s

    root = min(x for x in range(1, B.q) if ev(x) == 0)
    table = [0] * A.q
    g = A.generator()
    for i in range(A.q - 1):
        table[A.pow(g, i)] = B.pow(root, i)
    return tuple(table)


def embed(a: int, src: GF, dst: GF) -> int:
    return embedding(src.p, src.k, dst.k)[a]
