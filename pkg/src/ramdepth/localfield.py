"""Explicit towers of local fields of characteristic p.

Every field in a tower is ``k((w))`` for a finite field ``k`` and a
chosen uniformizer ``w``.  A tower is built from three kinds of steps:

* ``unramified(k)``: enlarge the residue field, keep the uniformizer;
* ``tame(m)``: adjoin ``w^(1/m)``;
* ``artin_schreier(m)``: adjoin a root of ``y^p - y = c * w_j^(-m)``.

Each level records how the previous uniformizer is written in terms of
the new one, so elements can be pushed up the tower by substitution.
Automorphisms are found by extending embeddings one step at a time and
are stored as (residue Frobenius power, image of the top uniformizer).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import DomainError, InvariantError, PrecisionError
from .finitefield import GF, get_field
from .groups import FiniteGroup
from .ramification import RamDatum, breaks, hh_phi, hh_psi
from .rationals import INF, is_prime, rat, rat_ceil, rat_floor
from .series import LaurentSeries

DEFAULT_PREC = 40
MAX_PREC = 320
KINDS = ("unramified", "tame", "artin_schreier")


def default_prec() -> int:
    env = os.environ.get("RAMDEPTH_PREC")
    return int(env) if env else DEFAULT_PREC


# -- descriptors -----------------------------------------------------------

@dataclass(frozen=True)
class Step:
    """One step of a tower.

    For Artin-Schreier steps ``coeff`` is the encoding of c in the tower's
    coefficient field and ``level`` picks the uniformizer ``w_j`` (default:
    the level just below).
    """

    kind: str
    param: int
    coeff: int = 1
    level: Optional[int] = None

    def to_json(self) -> dict:
        d = {"kind": self.kind, "param": self.param}
        if self.coeff != 1:
            d["coeff"] = self.coeff
        if self.level is not None:
            d["level"] = self.level
        return d


def unramified(k: int) -> Step:
    return Step("unramified", k)


def tame(m: int) -> Step:
    return Step("tame", m)


def artin_schreier(m: int, coeff: int = 1, level: Optional[int] = None) -> Step:
    return Step("artin_schreier", m, coeff, level)


@dataclass(frozen=True)
class TowerDescriptor:
    """F_q((t)) = K_0 < K_1 < ... < K_n; the extension is K_n / K_base."""

    p: int
    residue_deg: int
    steps: Tuple[Step, ...] = ()
    base_steps: int = 0
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        if not is_prime(self.p):
            raise DomainError(f"p={self.p} is not prime")
        if self.residue_deg < 1:
            raise DomainError("residue_deg must be positive")
        if not 0 <= self.base_steps <= len(self.steps):
            raise DomainError("base_steps out of range")
        f = self.residue_deg
        for i, st in enumerate(self.steps, start=1):
            if st.kind not in KINDS:
                raise DomainError(f"unknown step kind {st.kind!r}")
            if st.param < 1:
                raise DomainError("step parameters must be positive")
            if st.kind == "unramified":
                f *= st.param
            elif st.kind == "tame":
                if gcd(st.param, self.p) != 1:
                    raise DomainError(f"tame degree {st.param} is divisible by p")
                if (self.p ** f - 1) % st.param:
                    raise DomainError(f"the residue field lacks the {st.param}-th roots of unity")
            else:
                if st.param % self.p == 0:
                    raise DomainError("Artin-Schreier parameter must be prime to p")
                if st.level is not None and not 0 <= st.level < i:
                    raise DomainError("Artin-Schreier level must point below the step")

    @property
    def field_degree(self) -> int:
        k = self.residue_deg
        for st in self.steps:
            if st.kind == "unramified":
                k *= st.param
        return k

    def truncated(self, n: int) -> "TowerDescriptor":
        return TowerDescriptor(self.p, self.residue_deg, self.steps[:n], min(self.base_steps, n))

    def over(self, b: int) -> "TowerDescriptor":
        return TowerDescriptor(self.p, self.residue_deg, self.steps, b, self.name)

    def extended(self, *steps: Step) -> "TowerDescriptor":
        return TowerDescriptor(self.p, self.residue_deg, self.steps + tuple(steps), self.base_steps, self.name)

    def to_json(self) -> dict:
        d = {"p": self.p, "residue_deg": self.residue_deg, "steps": [s.to_json() for s in self.steps]}
        if self.base_steps:
            d["base_steps"] = self.base_steps
        if self.name:
            d["name"] = self.name
        return d

    @classmethod
    def from_json(cls, d: dict) -> "TowerDescriptor":
        try:
            steps = [Step(s["kind"], int(s["param"]), int(s.get("coeff", 1)), s.get("level")) for s in d.get("steps", [])]
            return cls(int(d["p"]), int(d.get("residue_deg", 1)), tuple(steps), int(d.get("base_steps", 0)), d.get("name", ""))
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed tower descriptor: {exc}") from exc


# -- the realized tower ----------------------------------------------------

class _Level:
    """Per-level data: ramification, residue degree and the step relation."""

    def __init__(self, e: int, f: int, kind: str = "base", param: int = 0):
        self.e, self.f, self.kind, self.param = e, f, kind, param
        self.Q: Optional[LaurentSeries] = None  # previous uniformizer in this level's w
        self.a: Optional[LaurentSeries] = None  # AS right-hand side, previous level coords
        self.y: Optional[LaurentSeries] = None  # AS generator in this level's w
        self.alpha = self.beta = 0


def _reduce_artin_schreier(a: LaurentSeries) -> LaurentSeries:
    """Subtract z^p - z to clear leading exponents divisible by p."""
    F = a.field
    p = F.p
    while not a.is_zero() and a.val < 0 and a.val % p == 0:
        c = a.leading()
        d = F.frob(c, F.k - 1)
        m = LaurentSeries.monomial(F, d, a.val // p, a.prec)
        a = a - (m.pth_power() - m)
    return a


def _solve_artin_schreier(g: LaurentSeries, f: int) -> List[LaurentSeries]:
    """All z with z^p - z = g and coefficients in F_{p^f}; empty if none."""
    F = g.field
    p = F.p
    z = LaurentSeries.zero(F, g.prec)
    h = g
    while not h.is_zero() and h.val < 0:
        if h.val % p:
            return []
        d = F.frob(h.leading(), F.k - 1)
        m = LaurentSeries.monomial(F, d, h.val // p, h.prec)
        z = z + m
        h = h - (m.pth_power() - m)
    if h.prec <= 0:
        raise PrecisionError("constant term of an Artin-Schreier equation is unknown")
    c0 = h.coefficient(0)
    roots = [x for x in F.subfield(f) if F.sub(F.pow(x, p), x) == c0]
    if not roots:
        return []
    h = h.add_scalar(F.neg(c0))
    acc = LaurentSeries.zero(F, h.prec)
    term = h
    while not term.is_zero() and term.val < h.prec:
        acc = acc + term
        term = term.pth_power().truncate(h.prec)
    z = z - acc
    return [z.add_scalar(r) for r in roots]


class LocalTower:
    """All levels of a descriptor, realized at relative precision ``prec``."""

    def __init__(self, desc: TowerDescriptor, prec: int):
        self.desc = desc
        self.prec = prec
        self.p = desc.p
        self.field = F = get_field(desc.p, desc.field_degree)
        self.levels: List[_Level] = [_Level(1, desc.residue_deg)]
        self._embed: Dict[Tuple[int, int], LaurentSeries] = {}
        for i, st in enumerate(desc.steps, start=1):
            prev = self.levels[-1]
            if st.kind == "unramified":
                lev = _Level(prev.e, prev.f * st.param, st.kind, st.param)
                lev.Q = self.w(prec)
            elif st.kind == "tame":
                lev = _Level(prev.e * st.param, prev.f, st.kind, st.param)
                lev.Q = LaurentSeries.monomial(F, 1, st.param, st.param + prec)
            else:
                lev = _Level(prev.e * self.p, prev.f, st.kind, st.param)
                self._build_artin_schreier(i, st, lev)
            self.levels.append(lev)

    @property
    def top(self) -> int:
        return len(self.levels) - 1

    def w(self, prec: Optional[int] = None) -> LaurentSeries:
        return LaurentSeries.monomial(self.field, 1, 1, 1 + (prec or self.prec))

    def _build_artin_schreier(self, i: int, st: Step, lev: _Level):
        F, p, N = self.field, self.p, self.prec
        j = i - 1 if st.level is None else st.level
        if not F.in_subfield(st.coeff, self.levels[j].f) or st.coeff == 0:
            raise DomainError("Artin-Schreier coefficient must be a nonzero residue of its level")
        base = self.embedding(j, i - 1) if j < i - 1 else self.w()
        a = (base ** (-st.param)).scale(st.coeff)
        a = _reduce_artin_schreier(a)
        if a.is_zero() or a.val >= 0:
            raise DomainError("Artin-Schreier step is not totally ramified")
        M = -a.val
        # uniformizer w = y^alpha * pi^beta with -alpha*M + beta*p = 1
        alpha = min((x for x in range(-p, p + 1) if x and (1 + x * M) % p == 0), key=lambda x: (abs(x), x))
        beta = (1 + alpha * M) // p
        A0 = a.leading()
        V0 = F.pow(A0, beta)
        U0 = F.pow(A0, -alpha)
        A1 = a.shift(M).scale(F.inv(A0))
        c1 = F.pow(V0, 1 - p)
        one = LaurentSeries.one(F, N)
        U1 = one
        for _ in range(N + 4):
            V1 = U1.unit_power(Fraction(-beta, alpha))
            g = U1.scale(U0).shift(p)
            num = A1.compose(g).truncate(N)
            den = V1.pth_power().truncate(N) - V1.scale(c1).shift(M * (p - 1))
            new = (num * den.inverse()).unit_power(Fraction(1, M)).truncate(N)
            if new.agrees(U1) and new.prec == U1.prec:
                break
            U1 = new
        else:  # pragma: no cover
            raise InvariantError("artin-schreier-iteration", "no convergence")
        V1 = U1.unit_power(Fraction(-beta, alpha))
        lev.Q = U1.scale(U0).shift(p)
        lev.y = V1.scale(V0).shift(-M)
        lev.a, lev.alpha, lev.beta, lev.param = a, alpha, beta, M
        check = lev.y.pth_power() - lev.y - a.compose(lev.Q)
        if not check.is_zero() and check.val < check.prec - 1 and check.val < N // 2 - M * p:
            raise InvariantError("artin-schreier-root", "defining relation fails")

    def embedding(self, j: int, i: int) -> LaurentSeries:
        """Uniformizer of level j written as a series in the uniformizer of level i."""
        if j == i:
            return self.w()
        key = (j, i)
        if key not in self._embed:
            s = self.levels[i].Q
            if i - 1 > j:
                s = self.embedding(j, i - 1).compose(s)
            self._embed[key] = s
        return self._embed[key]

    def push(self, x: LaurentSeries, j: int, i: int) -> LaurentSeries:
        """Image of an element of level j in level i."""
        if j == i:
            return x
        return x.compose(self.embedding(j, i))

    # -- embeddings and automorphisms --------------------------------------
    def _extend(self, i: int, j: int, img: LaurentSeries) -> List[Tuple[int, LaurentSeries]]:
        F, n = self.field, self.top
        lev, prev = self.levels[i], self.levels[i - 1]
        fn = self.levels[n].f
        if lev.kind == "unramified":
            return [((j + t * prev.f) % lev.f, img) for t in range(lev.param)]
        if lev.kind == "tame":
            m = lev.param
            E = img.valuation()
            if E % m:
                return []
            u0 = img.leading()
            unit = img.shift(-E).scale(F.inv(u0))
            root = unit.unit_power(Fraction(1, m)).shift(E // m)
            return [(j, root.scale(rho)) for rho in F.nth_roots(u0, m, fn)]
        a = lev.a
        moved = a.frobenius(j).compose(img)
        fixed = self.push(a, i - 1, n)
        out = []
        y_top = self.push(lev.y, i, n)
        for z in _solve_artin_schreier(moved - fixed, fn):
            sy = y_top + z
            out.append((j, (sy ** lev.alpha) * (img ** lev.beta)))
        return out

    def embeddings(self, b: int) -> List[Tuple[int, LaurentSeries]]:
        """All K_b-embeddings of K_top into itself: (Frobenius power, image of w)."""
        embs = [(0, self.embedding(b, self.top))]
        for i in range(b + 1, self.top + 1):
            embs = [e for j, img in embs for e in self._extend(i, j, img)]
        return embs


@dataclass
class Automorphism:
    frob: int
    image: LaurentSeries

    def apply(self, x: LaurentSeries) -> LaurentSeries:
        return x.frobenius(self.frob).compose(self.image)


class TowerExtension:
    """The extension K_top / K_base of a realized tower.

    Elements are :class:`LaurentSeries` in the top uniformizer.
    """

    def __init__(self, desc: TowerDescriptor, prec: Optional[int] = None):
        prec = prec or default_prec()
        self.desc = desc
        self.prec = prec
        self.tower = T = LocalTower(desc, prec)
        self.field = T.field
        self.p = desc.p
        self.b, self.n = desc.base_steps, T.top
        top, bot = T.levels[self.n], T.levels[self.b]
        self.e, self.f = top.e, top.f
        self.e_base, self.f_base = bot.e, bot.f
        self.rel_e = self.e // self.e_base
        self.degree = self.rel_e * (self.f // self.f_base)
        self.embedding = T.embedding(self.b, self.n)
        self.automorphisms = [Automorphism(j, img) for j, img in T.embeddings(self.b)]
        self.is_galois = len(self.automorphisms) == self.degree
        if len(self.automorphisms) > self.degree:
            raise InvariantError("automorphism-count", "more automorphisms than the degree")
        w = T.w()
        self._vals: List[object] = []
        for a in self.automorphisms:
            d = a.image - w
            if a.frob % self.f:
                self._vals.append(None)
            elif d.is_zero():
                self._vals.append(INF)
            else:
                self._vals.append(d.val)
        ids = [k for k, v in enumerate(self._vals) if v is INF]
        if len(ids) != 1:
            raise PrecisionError("cannot separate the identity from other automorphisms")
        self.identity = ids[0]
        # put the identity first for readable labels
        order = [self.identity] + [k for k in range(len(self.automorphisms)) if k != self.identity]
        self.automorphisms = [self.automorphisms[k] for k in order]
        self._vals = [self._vals[k] for k in order]
        self.identity = 0
        self._table = None
        self._norm_cache: Dict[Tuple[int, int], LaurentSeries] = {}
        self._powers: Dict[int, List[LaurentSeries]] = {}

    def __repr__(self):
        return f"TowerExtension({self.desc.to_json()}, prec={self.prec})"

    def refined(self) -> "TowerExtension":
        if self.prec * 2 > MAX_PREC:
            raise PrecisionError(f"precision {self.prec * 2} exceeds the cap {MAX_PREC}")
        return realize_tower(self.desc, self.prec * 2)

    # -- elements ----------------------------------------------------------
    def w(self) -> LaurentSeries:
        return self.tower.w()

    def one(self) -> LaurentSeries:
        return LaurentSeries.one(self.field, self.prec)

    def monomial(self, coeff: int, n: int) -> LaurentSeries:
        return LaurentSeries.monomial(self.field, coeff, n, n + self.prec)

    def t(self) -> LaurentSeries:
        return self.tower.embedding(0, self.n)

    def level_element(self, level: int, x: LaurentSeries) -> LaurentSeries:
        return self.tower.push(x, level, self.n)

    def generator(self, level: int) -> LaurentSeries:
        """The adjoined element of a level (y for Artin-Schreier steps) in top coordinates."""
        lev = self.tower.levels[level]
        if lev.kind == "artin_schreier":
            return self.tower.push(lev.y, level, self.n)
        return self.tower.embedding(level, self.n)

    def residue_basis(self) -> Tuple[int, ...]:
        return self.field.subfield_basis(self.f)

    def residues(self) -> Tuple[int, ...]:
        return self.field.subfield(self.f)

    def apply(self, k: int, x: LaurentSeries) -> LaurentSeries:
        return self.automorphisms[k].apply(x)

    def inertia(self) -> List[int]:
        return [k for k, a in enumerate(self.automorphisms) if a.frob % self.f == 0]

    # -- group structure ---------------------------------------------------
    def table(self) -> List[List[int]]:
        if self._table is not None:
            return self._table
        vals = [v for v in self._vals if v is not None and v is not INF]
        D = max(vals, default=1) + 2
        auts = self.automorphisms
        if any(a.image.prec < D for a in auts):
            raise PrecisionError("automorphism images too short to build the group table")
        short = [a.image.truncate(D) for a in auts]
        frobs = [a.frob % self.f for a in auts]
        tab = []
        for s, a in enumerate(auts):
            row = []
            for t in range(len(auts)):
                img = short[t].frobenius(a.frob).compose(short[s]).truncate(D)
                j = (a.frob + auts[t].frob) % self.f
                hits = [r for r in range(len(auts)) if frobs[r] == j and (short[r] - img).is_zero()]
                if len(hits) != 1:
                    raise PrecisionError("composition does not match a unique automorphism")
                row.append(hits[0])
            tab.append(row)
        self._table = tab
        return tab

    def depth(self, k: int, unit: Optional[LaurentSeries] = None):
        """depth of automorphism k; optionally measured on the uniformizer unit*w."""
        a = self.automorphisms[k]
        if a.frob % self.f:
            raise DomainError("depth is only defined on inertia")
        if k == self.identity:
            return INF
        if unit is None:
            v = self._vals[k]
        else:
            wp = unit * self.w()
            d = a.apply(wp) - wp
            if d.is_zero():
                raise PrecisionError("moved uniformizer agrees to precision")
            v = d.val - wp.valuation() + 1
        return Fraction(v - 1, self.e)

    # -- descent to the base -----------------------------------------------
    def descend(self, h: LaurentSeries, stop: Optional[int] = None) -> LaurentSeries:
        """Write an element of the base, given in top coordinates, in base coordinates.

        With ``stop`` only exponents ``< stop`` of the base expansion are produced.
        """
        F, r = self.field, self.rel_e
        P = self.embedding
        lp = P.leading()
        terms: Dict[int, int] = {}
        out_prec = -((-h.prec) // r)
        if stop is not None:
            out_prec = min(out_prec, stop)
        if h.is_zero():
            return LaurentSeries.zero(F, out_prec)
        k = -((-h.val) // r)
        power = P ** k
        while not h.is_zero() and h.val < h.prec:
            if h.val >= out_prec * r:
                break
            if h.val % r:
                raise InvariantError("descent", f"exponent {h.val} is not a multiple of {r}")
            kk = h.val // r
            while k < kk:
                power = power * P
                k += 1
            c = F.div(h.leading(), F.pow(lp, kk))
            if not F.in_subfield(c, self.f_base):
                raise InvariantError("descent", "coefficient outside the base residue field")
            terms[kk] = c
            h = h - power.scale(c)
        out_prec = min(out_prec, -((-h.prec) // r))
        return LaurentSeries.from_dict(F, terms, out_prec)

    # -- powers of conjugates of w, shared by norm computations ------------
    def _conj_power(self, k: int, n: int) -> LaurentSeries:
        lst = self._powers.setdefault(k, [LaurentSeries.one(self.field, self.prec)])
        img = self.automorphisms[k].image
        while len(lst) <= n:
            lst.append(lst[-1] * img)
        return lst[n]


@lru_cache(maxsize=256)
def _realize_cached(desc: TowerDescriptor, prec: int) -> TowerExtension:
    return TowerExtension(desc, prec)


def realize_tower(desc: TowerDescriptor, prec: Optional[int] = None) -> TowerExtension:
    """Realize a descriptor, doubling the precision on failure up to the cap."""
    prec = prec or default_prec()
    while True:
        try:
            return _realize_cached(desc, prec)
        except PrecisionError:
            if prec * 2 > MAX_PREC:
                raise
            prec *= 2


def _retry(fn):
    """Re-run an operation on a finer realization after a precision failure."""

    def wrapper(ext, *args, **kwargs):
        while True:
            try:
                return fn(ext, *args, **kwargs)
            except PrecisionError:
                ext = ext.refined()

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


# -- valuations, depth, data ---------------------------------------------

def valuation(x: LaurentSeries, ext: TowerExtension) -> Fraction:
    """Valuation normalized so that val(t) = 1."""
    return Fraction(x.valuation(), ext.e)


def depth_of_aut(ext: TowerExtension, k: int, unit: Optional[LaurentSeries] = None):
    return ext.depth(k, unit)


def realize_ramdatum(ext: TowerExtension) -> RamDatum:
    if not ext.is_galois:
        raise DomainError("extension is not Galois; no ramification datum")
    while True:
        try:
            tab = ext.table()
            break
        except PrecisionError:
            ext = ext.refined()
    labels = ["1"] + [f"s{k}" for k in range(1, len(tab))]
    g = FiniteGroup(tab, labels)
    inert = ext.inertia()
    dep = {k: ext.depth(k) for k in inert if k != ext.identity}
    return RamDatum(g, inert, dep, ext.e_base)


def subextension_subgroup(ext: TowerExtension, level: int) -> List[int]:
    """Automorphisms of K_top/K_base fixing the intermediate level."""
    if not ext.b <= level <= ext.n:
        raise DomainError("level outside the extension")
    wl = ext.tower.embedding(level, ext.n)
    fl = ext.tower.levels[level].f
    return [k for k, a in enumerate(ext.automorphisms) if a.frob % fl == 0 and (a.apply(wl) - wl).is_zero()]


# -- trace and norm --------------------------------------------------------

def _galois(ext):
    if not ext.is_galois:
        raise DomainError("trace and norm are computed for Galois extensions only")


@_retry
def trace(ext: TowerExtension, x: LaurentSeries) -> LaurentSeries:
    """Sum of conjugates, returned in base coordinates."""
    _galois(ext)
    s = None
    for a in ext.automorphisms:
        c = a.apply(x)
        s = c if s is None else s + c
    return ext.descend(s)


@_retry
def norm(ext: TowerExtension, x: LaurentSeries) -> LaurentSeries:
    """Product of conjugates, returned in base coordinates."""
    _galois(ext)
    s = None
    for a in ext.automorphisms:
        c = a.apply(x)
        s = c if s is None else s * c
    return ext.descend(s)


def _rank_mod_p(rows: List[np.ndarray], p: int) -> int:
    if not rows:
        return 0
    A = np.array(rows, dtype=np.int64) % p
    rank, ncol = 0, A.shape[1]
    for c in range(ncol):
        piv = [i for i in range(rank, A.shape[0]) if A[i, c]]
        if not piv:
            continue
        A[[rank, piv[0]]] = A[[piv[0], rank]]
        A[rank] = (A[rank] * pow(int(A[rank, c]), -1, p)) % p
        for i in range(A.shape[0]):
            if i != rank and A[i, c]:
                A[i] = (A[i] - A[i, c] * A[rank]) % p
        rank += 1
        if rank == A.shape[0]:
            break
    return rank


@_retry
def trace_image_level(ext: TowerExtension, s) -> Tuple[Fraction, bool]:
    """How far the trace shifts the filtration, and graded surjectivity at s.

    The shift is the minimum of ``val(Tr(b w^n)) - n/e`` over residue basis
    elements b and one full period of exponents n starting at ``s*e``.
    Surjectivity asks whether the traces of ``b w^(s e)`` span the residue
    field of the base at grade ``s + shift``.
    """
    _galois(ext)
    s = rat(s)
    n0 = s * ext.e
    if n0.denominator != 1:
        raise DomainError(f"s={s} is not on the grid (1/{ext.e})Z")
    n0 = int(n0)
    F = ext.field
    basis = ext.residue_basis()
    shift = None
    for n in range(n0, n0 + ext.rel_e):
        for b in basis:
            tr = trace(ext, ext.monomial(b, n))
            if tr.is_zero():
                continue
            d = Fraction(tr.val, ext.e_base) - Fraction(n, ext.e)
            shift = d if shift is None or d < shift else shift
    if shift is None:
        raise PrecisionError("all traces vanish to precision")
    target = (s + shift) * ext.e_base
    if target.denominator != 1:
        return shift, True
    rows = []
    for b in basis:
        tr = trace(ext, ext.monomial(b, n0))
        rows.append(F.vec[tr.coefficient(int(target))])
    return shift, _rank_mod_p(rows, F.p) == ext.f_base


def _norm_generator(ext: TowerExtension, b: int, n: int, prec_base: int) -> LaurentSeries:
    """Nm(1 + b w^n) in base coordinates, known modulo w_base^prec_base."""
    key = (b, n)
    hit = ext._norm_cache.get(key)
    if hit is not None and hit.prec >= prec_base:
        return hit.truncate(prec_base)
    F = ext.field
    need = prec_base * ext.rel_e
    if n + ext.prec < need:
        raise PrecisionError("working precision too small for this norm window")
    acc = None
    for k, a in enumerate(ext.automorphisms):
        term = ext._conj_power(k, n).scale(F.frob(b, a.frob)).add_scalar(1).truncate(need)
        acc = term if acc is None else (acc * term).truncate(need)
    out = ext.descend(acc)
    if out.prec < prec_base:
        raise PrecisionError("norm of a generator lost too many digits")
    ext._norm_cache[key] = out
    return out.truncate(prec_base)


def filtered_ranks(gens: List[LaurentSeries], lo: int, hi: int) -> Dict[int, int]:
    """F_p-rank of each graded piece of the subgroup of U_lo/U_(hi+1) generated by gens.

    Units are series ``1 + h`` in base coordinates; level = val(h).
    """
    if not gens:
        return {L: 0 for L in range(lo, hi + 1)}
    F = gens[0].field
    p = F.p
    pool: Dict[int, List[LaurentSeries]] = {}

    def push(u):
        u = u.truncate(hi + 1)
        h = u.add_scalar(F.neg(1))
        if h.is_zero():
            return
        if h.val < lo:
            raise InvariantError("filtered-ranks", "generator below the window")
        pool.setdefault(h.val, []).append(u)

    for g in gens:
        push(g)
    ranks = {}
    for L in range(lo, hi + 1):
        basis: List[Tuple[int, np.ndarray, LaurentSeries, LaurentSeries]] = []
        for u in pool.pop(L, []):
            v = F.vec[u.add_scalar(F.neg(1)).leading()].copy()
            for piv, bv, bu, binv in basis:
                c = int(v[piv]) * pow(int(bv[piv]), -1, p) % p
                if c:
                    v = (v - c * bv) % p
                    u = u * binv ** c
            if v.any():
                piv = int(np.flatnonzero(v)[0])
                basis.append((piv, v, u, u.inverse()))
            else:
                push(u)
        ranks[L] = len(basis)
        for _, _, bu, _ in basis:
            push(bu.pth_power())
    return ranks


def _generator_norms(ext: TowerExtension, nlo: int, nhi: int, prec_base: int) -> List[LaurentSeries]:
    return [_norm_generator(ext, b, n, prec_base) for n in range(max(nlo, 1), nhi + 1) for b in ext.residue_basis()]


@dataclass(frozen=True)
class NormGraded:
    target_grade: Fraction
    surjective: bool
    additive_match: bool
    additive_applicable: bool

    def to_json(self) -> dict:
        from .rationals import fmt

        return {
            "target_grade": fmt(self.target_grade),
            "surjective": self.surjective,
            "additive_match": self.additive_match,
            "additive_applicable": self.additive_applicable,
        }


@_retry
def norm_graded(ext: TowerExtension, s) -> NormGraded:
    """Norm on the unit filtration at level s > 0.

    ``surjective`` asks whether Nm maps L^x_{>=s} onto E^x_{>=phi(s)}; it is
    decided on a finite window that reaches one unit past the last lower
    break, after which the filtration quotients are handled by the
    additive approximation.  ``additive_match`` compares Nm(1+x) with
    1+Tr(x) modulo E^x_{>phi(s)} for every graded representative x of
    level s; it is only asserted when s lies beyond the last lower break.
    """
    _galois(ext)
    s = rat(s)
    if s <= 0:
        raise DomainError("norm_graded needs s > 0")
    D = realize_ramdatum(ext)
    phi = hh_phi(D)
    br = breaks(D)
    target = phi(s)
    ns = rat_ceil(s * ext.e)
    top = max(s, br.ell) + 1
    ntop = rat_floor(top * ext.e)
    A0 = rat_ceil(target * ext.e_base)
    A1 = rat_floor(phi(top) * ext.e_base)
    gens = _generator_norms(ext, ns, ntop, A1 + 1)
    ranks = filtered_ranks(gens, A0, A1)
    surj = all(r == ext.f_base for r in ranks.values())
    applicable = s > br.ell
    match = False
    if applicable:
        match = True
        if Fraction(ns, ext.e) == s:
            cut = rat_floor(target * ext.e_base) + 1
            for a in ext.residues():
                if a == 0:
                    continue
                x = ext.monomial(a, ns)
                nm = norm(ext, x.add_scalar(1))
                tr = trace(ext, x)
                diff = (nm - tr.add_scalar(1)).truncate(cut)
                if cut > diff.prec:
                    raise PrecisionError("norm known too coarsely")
                if not diff.is_zero():
                    match = False
                    break
    return NormGraded(target, surj, match, applicable)


@_retry
def check_tfae_field(ext: TowerExtension, s) -> bool:
    """Whether Nm maps L^x_{>psi(s)} onto E^x_{>s}, on the graded window up to psi(s)+2."""
    _galois(ext)
    s = rat(s)
    if s < 0:
        raise DomainError("s must be >= 0")
    D = realize_ramdatum(ext)
    phi, psi = hh_phi(D), hh_psi(D)
    x = psi(s)
    nlo = rat_floor(x * ext.e) + 1
    nhi = rat_floor((x + 2) * ext.e)
    alo = rat_floor(s * ext.e_base) + 1
    ahi = rat_floor(phi(x + 2) * ext.e_base)
    gens = _generator_norms(ext, nlo, nhi, ahi + 1)
    ranks = filtered_ranks(gens, alo, ahi)
    return all(r == ext.f_base for r in ranks.values())


# -- additive characters ---------------------------------------------------

@dataclass(frozen=True)
class AdditiveCharacter:
    """Lambda_F(a) = scale * Tr_{k/F_p}(a_0) / p in Q/Z, a_0 the constant coefficient.

    Trivial on t*O_F and nontrivial on O_F, so its conductor is 0.
    """

    p: int
    scale: int = 1

    def __post_init__(self):
        if self.scale % self.p == 0:
            raise DomainError("scale must be a unit mod p")

    @property
    def conductor(self) -> Fraction:
        return Fraction(0)

    def on_base(self, a: LaurentSeries) -> Fraction:
        F = a.field
        if a.prec <= 0:
            raise PrecisionError("constant coefficient unknown")
        a0 = a.coefficient(0)
        return Fraction((self.scale * F.trace_to_prime(a0)) % self.p, self.p)


def _over_F(ext: TowerExtension) -> TowerExtension:
    if ext.b == 0:
        return ext
    return realize_tower(ext.desc.over(0), ext.prec)


@_retry
def character_pair(chr: AdditiveCharacter, ext: TowerExtension, v: LaurentSeries, x: LaurentSeries) -> Fraction:
    """Lambda_F(Tr_{K/F}(v x)) for v, x in the top field K of ext."""
    full = _over_F(ext)
    if not full.is_galois:
        raise DomainError("the top field must be Galois over F to use the trace")
    prod = v * x
    tr = None
    for a in full.automorphisms:
        c = a.apply(prod)
        tr = c if tr is None else tr + c
    if tr.prec <= 0:
        raise PrecisionError("trace known too coarsely for the character")
    base = full.descend(tr, stop=1)
    return chr.on_base(base)


def character_conductor(chr: AdditiveCharacter, ext: TowerExtension, lowest: int = -200) -> Fraction:
    """Largest valuation of an element on which Lambda_K is nontrivial, by scanning monomials."""
    full = _over_F(ext)
    one = full.one()
    for n in range(full.e, lowest, -1):
        for b in full.residue_basis():
            if character_pair(chr, full, full.monomial(b, n), one) != 0:
                return Fraction(n, full.e)
    raise PrecisionError("no nontrivial value found in the scanned range")


# -- catalogs ----------------------------------------------------------------

def _valid(p, f, steps, base=0, name=""):
    try:
        return TowerDescriptor(p, f, tuple(steps), base, name)
    except DomainError:
        return None


def tame_compositum(desc: TowerDescriptor, e_rel: int) -> TowerDescriptor:
    """Append a tame step of degree prime to p*e_rel whose roots of unity are available."""
    p = desc.p
    f = desc.residue_deg
    for st in desc.steps:
        if st.kind == "unramified":
            f *= st.param
    for m in range(2, 64):
        if gcd(m, p * e_rel) == 1 and (p ** f - 1) % m == 0:
            return desc.extended(tame(m))
    raise DomainError("no tame degree available for a compositum")


def adapted_catalog(p: int, residue_deg: int = 1) -> List[TowerDescriptor]:
    """Bounded catalog of L/E over F_q((t)): unramified <= 4, tame <= 12, AS m <= 3."""
    out: List[TowerDescriptor] = [TowerDescriptor(p, residue_deg, (), 0, "trivial")]
    tames = [m for m in range(2, 13) if _valid(p, residue_deg, [tame(m)])]
    ams = [m for m in range(1, 4) if m % p]
    out += [_valid(p, residue_deg, [tame(m)], 0, f"tame{m}") for m in tames]
    out += [_valid(p, residue_deg, [unramified(k)], 0, f"unram{k}") for k in range(2, 5)]
    out += [_valid(p, residue_deg, [artin_schreier(m)], 0, f"as{m}") for m in ams]
    for m in tames:
        for a in ams:
            out.append(_valid(p, residue_deg, [tame(m), artin_schreier(a)], 1, f"tame{m}/as{a}"))
    for k in range(2, 5):
        for a in ams:
            out.append(_valid(p, residue_deg, [unramified(k), artin_schreier(a)], 1, f"unram{k}/as{a}"))
    return [d for d in out if d is not None]


def hh_catalog() -> List[TowerDescriptor]:
    """Galois towers used for the Hasse-Herbrand composition checks."""
    F9 = get_field(3, 2)
    i9 = F9.pow(F9.generator(), 2)  # a square root of -1 in F_9
    T = TowerDescriptor
    A = artin_schreier
    return [
        T(3, 1, (unramified(2),), name="F3:unram2"),
        T(3, 1, (unramified(3),), name="F3:unram3"),
        T(3, 1, (unramified(4),), name="F3:unram4"),
        T(3, 1, (tame(2),), name="F3:tame2"),
        T(3, 1, (A(1),), name="F3:as1"),
        T(3, 1, (A(2),), name="F3:as2"),
        T(3, 1, (tame(2), A(2)), name="F3:tame2+as(t^-1)"),
        T(3, 1, (tame(2), A(1)), name="F3:tame2/as1 (S3)"),
        T(3, 1, (A(1), unramified(2)), name="F3:as1+unram2"),
        T(3, 1, (unramified(2), A(1)), name="F3:unram2+as1"),
        T(3, 1, (A(1), tame(2)), name="F3:as1/tame2"),
        T(3, 1, (A(1), A(2, level=0)), name="F3:as1+as2"),
        T(3, 2, (tame(4),), name="F9:tame4"),
        T(3, 2, (tame(8),), name="F9:tame8"),
        T(3, 2, (unramified(2),), name="F9:unram2"),
        T(3, 2, (tame(2), A(1)), name="F9:tame2/as1"),
        T(3, 2, (tame(4), A(1)), 1, name="F9:tame4/as1 over tame4"),
        T(3, 2, (tame(4), A(1), A(1, coeff=i9, level=1)), name="F9:tame4/as1+as1(i)"),
        T(2, 1, (A(1),), name="F2:as1"),
        T(2, 1, (A(3),), name="F2:as3"),
        T(2, 1, (A(1), A(3, level=0)), name="F2:as1+as3"),
        T(2, 1, (unramified(3), A(1)), name="F2:unram3+as1"),
        T(5, 1, (A(1),), name="F5:as1"),
        T(5, 1, (A(2),), name="F5:as2"),
        T(5, 1, (tame(4),), name="F5:tame4"),
        T(5, 1, (tame(2), A(1)), name="F5:tame2/as1 (D5)"),
        T(7, 1, (tame(3),), name="F7:tame3"),
        T(7, 1, (tame(6),), name="F7:tame6"),
        T(13, 1, (tame(12),), name="F13:tame12"),
    ]
