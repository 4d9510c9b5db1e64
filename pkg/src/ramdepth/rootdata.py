"""Type A root data, apartments, graded Moy-Prasad models and dual torsion points.

Everything is written in the GL_n ambient: roots are e_i - e_j in Z^n,
apartment points are vectors in Q^n (normalized to trace zero for SL_n),
and the line of the matrix unit E_ij times t^c sits in grade
c + x_i - x_j.  The diagonal lines sit in grade c.  Lie algebra elements
of a graded piece are stored as coefficient vectors on an ordered list
of labels and can be turned into the n x n residue matrix, which is the
form used for characteristic polynomials downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from sympy import Matrix as SMatrix
from sympy.matrices.normalforms import smith_normal_decomp

from .errors import DomainError
from .finitefield import GF
from .rationals import common_denominator, fmt, frac_part, rat

TYPES = ("GL", "SL", "PGL")

Perm = Tuple[int, ...]


def _compose(a: Perm, b: Perm) -> Perm:
    """(a o b)(i) = a(b(i))."""
    return tuple(a[i] for i in b)


def _perm_inverse(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


class RootDatum:
    """Split type A root datum: GL_n, SL_n, or PGL_n (the dual of SL_n).

    Characters and cocharacters are written in the ambient Z^n.  For SL_n
    the character lattice is Z^n / Z(1,...,1), with basis the images of
    e_1..e_{n-1}; for PGL_n it is the trace-zero sublattice with basis
    e_i - e_{i+1}.
    """

    def __init__(self, kind: str, n: int):
        if kind not in TYPES:
            raise DomainError(f"unsupported root datum type {kind!r}")
        if n < 1 or (kind != "GL" and n < 2):
            raise DomainError("rank too small")
        self.kind, self.n = kind, int(n)

    def __repr__(self):
        return f"{self.kind}{self.n}"

    def __eq__(self, other):
        return isinstance(other, RootDatum) and (self.kind, self.n) == (other.kind, other.n)

    def __hash__(self):
        return hash((self.kind, self.n))

    @classmethod
    def parse(cls, text: str) -> "RootDatum":
        text = text.strip().upper()
        for kind in TYPES:
            if text.startswith(kind) and text[len(kind):].isdigit():
                return cls(kind, int(text[len(kind):]))
        raise DomainError(f"cannot parse group {text!r}; expected e.g. GL2 or SL2")

    def to_json(self) -> dict:
        return {"type": self.kind, "n": self.n}

    @classmethod
    def from_json(cls, d: dict) -> "RootDatum":
        return cls(d["type"], d["n"])

    # -- roots -------------------------------------------------------------
    @property
    def roots(self) -> List[Tuple[int, ...]]:
        out = []
        for i in range(self.n):
            for j in range(self.n):
                if i != j:
                    v = [0] * self.n
                    v[i], v[j] = 1, -1
                    out.append(tuple(v))
        return out

    @property
    def coroots(self) -> List[Tuple[int, ...]]:
        return self.roots

    def pairing(self, a: Sequence, b: Sequence):
        return sum(x * y for x, y in zip(a, b))

    @property
    def simple_roots(self) -> List[Tuple[int, ...]]:
        return [r for r in self.roots if any(r[i] == 1 and r[i + 1] == -1 for i in range(self.n - 1))]

    @property
    def rank(self) -> int:
        """Rank of the character lattice."""
        return self.n if self.kind == "GL" else self.n - 1

    def dual(self) -> "RootDatum":
        return RootDatum({"GL": "GL", "SL": "PGL", "PGL": "SL"}[self.kind], self.n)

    # -- Weyl group --------------------------------------------------------
    def weyl_group(self) -> List[Perm]:
        return sorted(permutations(range(self.n)))

    def weyl_exponent(self) -> int:
        from math import lcm
        out = 1
        for w in self.weyl_group():
            out = lcm(out, _perm_order(w))
        return out

    def character_matrix(self, w: Perm) -> List[List[int]]:
        """Integer matrix of w on the character lattice; columns are images of basis vectors."""
        n = self.n
        if self.kind == "GL":
            basis = [_unit(n, i) for i in range(n)]
        elif self.kind == "SL":
            basis = [_unit(n, i) for i in range(n - 1)]
        else:
            basis = [tuple(_unit(n, i)[k] - _unit(n, i + 1)[k] for k in range(n)) for i in range(n - 1)]
        cols = []
        for b in basis:
            img = [0] * n
            for i, c in enumerate(b):
                img[w[i]] += c
            cols.append(self._coords(img))
        r = len(basis)
        return [[cols[j][i] for j in range(r)] for i in range(r)]

    def _coords(self, v: Sequence[int]) -> List[int]:
        n = self.n
        if self.kind == "GL":
            return list(v)
        if self.kind == "SL":
            # e_n = -(e_1 + ... + e_{n-1}) modulo (1,...,1)
            return [v[i] - v[n - 1] for i in range(n - 1)]
        if sum(v):
            raise DomainError("not in the trace-zero lattice")
        out, acc = [], 0
        for i in range(n - 1):
            acc += v[i]
            out.append(acc)
        return out

    def weyl_matrices(self) -> List[List[List[int]]]:
        return [self.character_matrix(w) for w in self.weyl_group()]


def _unit(n: int, i: int) -> Tuple[int, ...]:
    return tuple(1 if k == i else 0 for k in range(n))


def _perm_order(w: Perm) -> int:
    k, cur, ident = 1, w, tuple(range(len(w)))
    while cur != ident:
        cur = _compose(w, cur)
        k += 1
    return k


# -- apartment -----------------------------------------------------------------

class ApartmentPoint:
    """A point of the standard apartment, in GL_n coordinates.

    For SL_n the coordinates are normalized to sum zero.  ``e`` is the
    least common denominator of the root values x_i - x_j.
    """

    def __init__(self, rd: RootDatum, coords: Iterable):
        xs = [rat(c) for c in coords]
        n = rd.n
        if rd.kind == "SL" and len(xs) == n - 1:
            xs.append(-sum(xs))
        if len(xs) != n:
            raise DomainError(f"expected {n} coordinates for {rd}")
        if rd.kind == "SL":
            mean = sum(xs) / n
            xs = [x - mean for x in xs]
        self.rd = rd
        self.coords: Tuple[Fraction, ...] = tuple(xs)
        self.e = common_denominator([a - b for a in xs for b in xs]) if n > 1 else 1

    def __eq__(self, other):
        return isinstance(other, ApartmentPoint) and self.rd == other.rd and self.coords == other.coords

    def __hash__(self):
        return hash((self.rd, self.coords))

    def __repr__(self):
        return f"ApartmentPoint({self.rd}, [{', '.join(fmt(c) for c in self.coords)}])"

    def root_value(self, i: int, j: int) -> Fraction:
        return self.coords[i] - self.coords[j]

    def to_json(self) -> List[str]:
        return [fmt(c) for c in self.coords]

    @classmethod
    def origin(cls, rd: RootDatum) -> "ApartmentPoint":
        return cls(rd, [0] * rd.n)

    @classmethod
    def barycenter(cls, rd: RootDatum) -> "ApartmentPoint":
        """Barycenter of the standard alcove: consecutive root values 1/n."""
        n = rd.n
        return cls(rd, [Fraction(n - 1 - i, n) for i in range(n)])


# -- graded models -----------------------------------------------------------

Label = Tuple[str, int, int, Fraction]


class GradedModel:
    """Coordinates on the graded piece at grade s of the Lie algebra at x.

    Labels are ``("root", i, j, c)`` for the line E_ij t^c and
    ``("torus", i, j, c)`` for a diagonal line: for GL_n j = i and the
    line is E_ii t^c, for SL_n j = i + 1 and the line is
    (E_ii - E_jj) t^c.  After :func:`shift_by_scalar` the power c may be
    fractional (lines over a ramified extension).
    """

    def __init__(self, rd: RootDatum, x: ApartmentPoint, s, e: int, field: GF, labels: Sequence[Label]):
        self.rd, self.x, self.s, self.e, self.field = rd, x, rat(s), int(e), field
        self.labels: Tuple[Label, ...] = tuple(labels)
        self._index = {(k, i, j): a for a, (k, i, j, _) in enumerate(self.labels)}

    def __repr__(self):
        return f"GradedModel({self.rd}, x={self.x.to_json()}, s={fmt(self.s)}, dim={self.dim})"

    @property
    def dim(self) -> int:
        return len(self.labels)

    def zero(self) -> Tuple[int, ...]:
        return (0,) * self.dim

    def check(self, coeffs: Sequence[int]) -> Tuple[int, ...]:
        if len(coeffs) != self.dim:
            raise DomainError(f"expected {self.dim} coefficients, got {len(coeffs)}")
        q = self.field.q
        out = tuple(int(c) for c in coeffs)
        if any(not 0 <= c < q for c in out):
            raise DomainError(f"coefficients must be encodings of elements of {self.field}")
        return out

    def to_matrix(self, coeffs: Sequence[int]) -> List[List[int]]:
        """The n x n residue matrix carried by a coefficient vector."""
        F, n = self.field, self.rd.n
        coeffs = self.check(coeffs)
        m = [[0] * n for _ in range(n)]
        for (kind, i, j, _), c in zip(self.labels, coeffs):
            if kind == "root":
                m[i][j] = F.add(m[i][j], c)
            elif i == j:
                m[i][i] = F.add(m[i][i], c)
            else:
                m[i][i] = F.add(m[i][i], c)
                m[j][j] = F.sub(m[j][j], c)
        return m

    def from_matrix(self, m: Sequence[Sequence[int]]) -> Tuple[int, ...]:
        """Inverse of :meth:`to_matrix`; the matrix must be supported on the labels."""
        F, n = self.field, self.rd.n
        out = [0] * self.dim
        used = set()
        for a, (kind, i, j, _) in enumerate(self.labels):
            if kind == "root":
                out[a] = m[i][j]
                used.add((i, j))
        diag = [m[i][i] for i in range(n)]
        has_torus = any(k == "torus" for k, *_ in self.labels)
        if has_torus:
            if self.rd.kind == "GL":
                for i in range(n):
                    out[self._index[("torus", i, i)]] = diag[i]
            else:
                acc = 0
                for i in range(n - 1):
                    acc = F.add(acc, diag[i])
                    out[self._index[("torus", i, i + 1)]] = acc
                if F.add(acc, diag[n - 1]) != 0:
                    raise DomainError("diagonal is not trace zero")
            used |= {(i, i) for i in range(n)}
        for i in range(n):
            for j in range(n):
                if m[i][j] and (i, j) not in used:
                    raise DomainError(f"matrix entry ({i},{j}) is outside the graded piece")
        return tuple(out)

    def to_json(self) -> dict:
        return {
            "group": self.rd.to_json(),
            "x": self.x.to_json(),
            "s": fmt(self.s),
            "e": self.e,
            "field": [self.field.p, self.field.k],
            "labels": [[k, i, j, fmt(c)] for k, i, j, c in self.labels],
        }


def graded_piece(rd: RootDatum, x: ApartmentPoint, s, e: int, field: GF) -> GradedModel:
    """Labels of the grade-s piece: E_ij t^c with c + x_i - x_j = s, c in Z; torus lines when s is in Z."""
    if rd.kind == "PGL":
        raise DomainError("graded models are implemented for GL_n and SL_n")
    s = rat(s)
    if x.rd != rd:
        raise DomainError("point lives in a different apartment")
    if (s * e).denominator != 1:
        raise DomainError(f"grade {fmt(s)} is not on the grid (1/{e})Z")
    if e % x.e:
        raise DomainError(f"point denominators {x.e} do not divide e = {e}")
    labels: List[Label] = []
    n = rd.n
    if s.denominator == 1:
        if rd.kind == "GL":
            labels += [("torus", i, i, s) for i in range(n)]
        else:
            labels += [("torus", i, i + 1, s) for i in range(n - 1)]
    for i in range(n):
        for j in range(n):
            if i != j:
                c = s - x.root_value(i, j)
                if c.denominator == 1:
                    labels.append(("root", i, j, c))
    return GradedModel(rd, x, s, e, field, labels)


def shift_by_scalar(model: GradedModel, a) -> GradedModel:
    """Multiplication by a scalar of valuation a: grade s -> s + a, every power label shifts by a."""
    a = rat(a)
    labels = [(k, i, j, c + a) for k, i, j, c in model.labels]
    e = model.e * a.denominator // _gcd(model.e, a.denominator)
    return GradedModel(model.rd, model.x, model.s + a, e, model.field, labels)


def _gcd(a, b):
    from math import gcd
    return gcd(a, b)


# -- reductive quotient ----------------------------------------------------------

@dataclass(frozen=True)
class ReductiveQuotient:
    """Root datum of G_x: roots with integral value at x, grouped into blocks."""

    rd: RootDatum
    x: ApartmentPoint
    roots: Tuple[Tuple[int, int], ...]
    blocks: Tuple[Tuple[int, ...], ...]
    weyl: Tuple[Perm, ...]

    @property
    def is_torus(self) -> bool:
        return not self.roots

    @property
    def is_full(self) -> bool:
        return len(self.roots) == self.rd.n * (self.rd.n - 1)

    def to_json(self) -> dict:
        return {
            "group": self.rd.to_json(),
            "x": self.x.to_json(),
            "roots": [list(r) for r in self.roots],
            "blocks": [list(b) for b in self.blocks],
            "weyl": [list(w) for w in self.weyl],
        }


def reductive_quotient(rd: RootDatum, x: ApartmentPoint) -> ReductiveQuotient:
    n = rd.n
    roots = tuple((i, j) for i in range(n) for j in range(n) if i != j and x.root_value(i, j).denominator == 1)
    classes: Dict[Fraction, List[int]] = {}
    for i, c in enumerate(x.coords):
        classes.setdefault(frac_part(c), []).append(i)
    blocks = tuple(sorted(tuple(v) for v in classes.values()))
    block_of = {i: b for b in blocks for i in b}
    weyl = tuple(w for w in rd.weyl_group() if all(w[i] in block_of[i] for i in range(n)))
    return ReductiveQuotient(rd, x, roots, blocks, weyl)


# -- affine Weyl group -------------------------------------------------------------

@dataclass(frozen=True)
class AffineWeylElement:
    """Monomial matrix with column i equal to sign[i] * t^power[i] * e_{perm[i]}.

    It normalizes the diagonal torus; its class in N(A)/A(O) is an element
    of the extended affine Weyl group.  Signs are +-1.
    """

    perm: Perm
    sign: Tuple[int, ...]
    power: Tuple[int, ...]

    @classmethod
    def identity(cls, n: int) -> "AffineWeylElement":
        return cls(tuple(range(n)), (1,) * n, (0,) * n)

    def __mul__(self, other: "AffineWeylElement") -> "AffineWeylElement":
        # (self * other) e_i = self(sign_o[i] t^pow_o[i] e_{perm_o[i]})
        n = len(self.perm)
        perm, sign, power = [], [], []
        for i in range(n):
            j = other.perm[i]
            perm.append(self.perm[j])
            sign.append(other.sign[i] * self.sign[j])
            power.append(other.power[i] + self.power[j])
        return AffineWeylElement(tuple(perm), tuple(sign), tuple(power))

    def translation(self) -> Tuple[int, ...]:
        """The lambda with x -> w x + lambda on the apartment."""
        lam = [0] * len(self.perm)
        for i, j in enumerate(self.perm):
            lam[j] = -self.power[i]
        return tuple(lam)

    def act_point(self, x: ApartmentPoint) -> ApartmentPoint:
        n = len(self.perm)
        out = [Fraction(0)] * n
        for i in range(n):
            out[self.perm[i]] = x.coords[i] - self.power[i]
        return ApartmentPoint(x.rd, out)

    def to_json(self) -> dict:
        return {"perm": list(self.perm), "sign": list(self.sign), "power": list(self.power)}


def affine_weyl_generators(rd: RootDatum) -> Dict[str, AffineWeylElement]:
    """Simple affine reflections s0..s_{n-1}; for GL_n also the length-zero rotation and its inverse."""
    if rd.kind == "PGL":
        raise DomainError("affine Weyl generators are implemented for GL_n and SL_n")
    n = rd.n
    gens: Dict[str, AffineWeylElement] = {}
    if n == 1:
        gens["tau"] = AffineWeylElement((0,), (1,), (1,))
        gens["tau^-1"] = AffineWeylElement((0,), (1,), (-1,))
        return gens
    for k in range(1, n):
        gens[f"s{k}"] = _reflection(n, k - 1, k, 0)
    gens["s0"] = _reflection(n, 0, n - 1, 1)
    if rd.kind == "GL":
        perm = tuple((i + 1) % n for i in range(n))
        power = tuple(-1 if i == n - 1 else 0 for i in range(n))
        tau = AffineWeylElement(perm, (1,) * n, power)
        gens["tau"] = tau
        gens["tau^-1"] = _inverse(tau)
    return gens


def _reflection(n: int, i: int, j: int, k: int) -> AffineWeylElement:
    """Signed transposition of e_i, e_j composed with diag(t^-k, t^k) on (i, j); determinant 1.

    On the apartment it is the reflection in the hyperplane x_i - x_j = k.
    """
    perm = list(range(n))
    perm[i], perm[j] = j, i
    sign = [1] * n
    sign[j] = -1
    power = [0] * n
    power[i], power[j] = k, -k
    return AffineWeylElement(tuple(perm), tuple(sign), tuple(power))


def _inverse(w: AffineWeylElement) -> AffineWeylElement:
    n = len(w.perm)
    perm, sign, power = [0] * n, [1] * n, [0] * n
    for i, j in enumerate(w.perm):
        perm[j] = i
        sign[j] = w.sign[i]
        power[j] = -w.power[i]
    return AffineWeylElement(tuple(perm), tuple(sign), tuple(power))


def affine_weyl_word(rd: RootDatum, word: Sequence[str]) -> AffineWeylElement:
    gens = affine_weyl_generators(rd)
    w = AffineWeylElement.identity(rd.n)
    for name in word:
        if name not in gens:
            raise DomainError(f"unknown generator {name!r}; have {sorted(gens)}")
        w = w * gens[name]
    return w


def affine_weyl_ball(rd: RootDatum, length: int) -> List[Tuple[Tuple[str, ...], AffineWeylElement]]:
    """Distinct elements of word length <= length, each with a shortest word (breadth first)."""
    gens = affine_weyl_generators(rd)
    names = sorted(gens)
    one = AffineWeylElement.identity(rd.n)
    seen = {one: ()}
    frontier = [one]
    for _ in range(length):
        nxt = []
        for w in frontier:
            for g in names:
                v = w * gens[g]
                if v not in seen:
                    seen[v] = seen[w] + (g,)
                    nxt.append(v)
        frontier = nxt
    return [(word, w) for w, word in seen.items()]


def act_affine_weyl(w: AffineWeylElement, model: GradedModel, coeffs: Sequence[int]) -> Tuple[GradedModel, Tuple[int, ...]]:
    """Transport (x, X) by Ad(w): returns the graded model at w x and the transported coefficients."""
    F = model.field
    n = model.rd.n
    if len(w.perm) != n:
        raise DomainError("Weyl element of the wrong rank")
    if model.rd.kind == "SL" and sum(w.power) != 0:
        raise DomainError("translation must lie in the coroot lattice for SL_n")
    m = model.to_matrix(coeffs)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if m[i][j]:
                c = m[i][j] if w.sign[i] * w.sign[j] == 1 else F.neg(m[i][j])
                out[w.perm[i]][w.perm[j]] = c
    x2 = w.act_point(model.x)
    if any(c.denominator != 1 for _, _, _, c in model.labels):
        raise DomainError("transport is implemented for models over F")
    target = graded_piece(model.rd, x2, model.s, model.e, F)
    return target, target.from_matrix(out)


# -- dual torus torsion points -------------------------------------------------------

def _mod1(v: Iterable) -> Tuple[Fraction, ...]:
    return tuple(frac_part(rat(a)) for a in v)


def _apply(mat: Sequence[Sequence[int]], x: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    return _mod1(sum(mat[i][j] * x[j] for j in range(len(x))) for i in range(len(mat)))


@dataclass(frozen=True)
class DualTorsionPoint:
    """A torsion point of the dual torus X^*(S) (x) C^x, as a vector in (Q/Z)^rank."""

    rd: RootDatum
    coords: Tuple[Fraction, ...]

    @classmethod
    def make(cls, rd: RootDatum, coords: Iterable) -> "DualTorsionPoint":
        c = _mod1(coords)
        if len(c) != rd.rank:
            raise DomainError(f"expected {rd.rank} coordinates for {rd}")
        return cls(rd, c)

    def act(self, w: Perm) -> "DualTorsionPoint":
        return DualTorsionPoint(self.rd, _apply(self.rd.character_matrix(w), self.coords))

    def orbit(self, weyl: Optional[Iterable[Perm]] = None) -> List[Tuple[Fraction, ...]]:
        ws = self.rd.weyl_group() if weyl is None else list(weyl)
        return sorted({self.act(w).coords for w in ws})

    def scaled(self, q: int) -> "DualTorsionPoint":
        return DualTorsionPoint(self.rd, _mod1(q * a for a in self.coords))

    def to_json(self) -> List[str]:
        return [fmt(a) for a in self.coords]


def _check_sigma(sigma):
    if sigma not in (None, "identity", "id"):
        raise DomainError("only the split case (identity datum automorphism) is implemented")


def frobenius_fixed(pt: DualTorsionPoint, q: int, sigma=None, weyl: Optional[Iterable[Perm]] = None) -> bool:
    """Whether the orbit of pt is stable under chi -> chi^q (split Frobenius)."""
    _check_sigma(sigma)
    return pt.scaled(q).coords in set(pt.orbit(weyl))


def torsion_canonical(pt: DualTorsionPoint, q: int, sigma=None) -> Optional[Tuple[Fraction, ...]]:
    """Least orbit member when the orbit satisfies the Frobenius condition, else None."""
    if not frobenius_fixed(pt, q, sigma):
        return None
    return pt.orbit()[0]


def frobenius_solutions(rd: RootDatum, q: int) -> List[Tuple[Fraction, ...]]:
    """All torsion points with q x = w x for some w, via Smith normal forms of q - w."""
    r = rd.rank
    found = set()
    for w in rd.weyl_group():
        A = rd.character_matrix(w)
        M = SMatrix([[q * (i == j) - A[i][j] for j in range(r)] for i in range(r)])
        S, P, Q = smith_normal_decomp(M)
        d = [abs(int(S[i, i])) for i in range(r)]
        for ks in product(*(range(di) for di in d)):
            y = [Fraction(k, di) for k, di in zip(ks, d)]
            x = _mod1(sum(int(Q[i, j]) * y[j] for j in range(r)) for i in range(r))
            found.add(x)
    return sorted(found)
