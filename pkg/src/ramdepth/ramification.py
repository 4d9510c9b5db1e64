"""Combinatorial ramification calculus for a finite Galois group.

A :class:`RamDatum` is the data left over from a Galois extension L/E
once the fields are forgotten: the group, its inertia subgroup, and the
depth of every inertia element, normalized so that the base field F
has value group Z.  Everything downstream (lower and upper numbering,
Hasse-Herbrand functions, conductor shifts) is computed exactly from
that data.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import DomainError, InvariantError, NotFoundError
from .groups import FiniteGroup
from .plfun import PLFun
from .rationals import INF, fmt, rat


class RamDatum:
    """Finite group with inertia subgroup and a depth on inertia.

    ``depth`` maps each non-identity inertia element to a rational
    ``>= 0``; the identity implicitly has depth :data:`INF`.  Validity is
    checked on construction: inertia must be normal, depths must be
    symmetric under inversion, every lower-numbering set must be a
    subgroup, and depths must lie on the grid ``(1/(e*e_base)) Z``.
    """

    def __init__(self, group: FiniteGroup, inertia: Iterable[int], depth: Mapping[int, object], e_base: int = 1):
        self.group = group
        self.inertia: FrozenSet[int] = frozenset(int(i) for i in inertia)
        self.e_base = int(e_base)
        if self.e_base < 1:
            raise DomainError("e_base must be a positive integer")
        one = group.identity
        if one not in self.inertia or not group.is_normal(self.inertia):
            raise DomainError("inertia must be a normal subgroup")
        dep: Dict[int, Fraction] = {}
        for k, v in depth.items():
            k = int(k)
            if k == one:
                continue
            if k not in self.inertia:
                raise DomainError(f"depth given for non-inertia element {group.labels[k]}")
            v = rat(v)
            if v < 0:
                raise DomainError("depths must be nonnegative")
            dep[k] = v
        missing = self.inertia - set(dep) - {one}
        if missing:
            raise DomainError(f"missing depths for {sorted(missing)}")
        self.depth: Dict[int, Fraction] = dep
        self.e = len(self.inertia)
        grid = self.e * self.e_base
        for k, v in dep.items():
            if dep[group.inv(k)] != v:
                raise DomainError("depth(s) must equal depth(s^-1)")
            if (v * grid).denominator != 1:
                raise DomainError(f"depth {v} is off the grid (1/{grid})Z")
        for r in sorted(set(dep.values())):
            if not group.is_subgroup(self.lower_group(r)):
                raise DomainError(f"lower group at {r} is not a subgroup")

    # -- basic queries -------------------------------------------------
    @property
    def order(self) -> int:
        return self.group.order

    def depth_of(self, s: int):
        if s == self.group.identity:
            return INF
        if s not in self.inertia:
            raise DomainError("depth is only defined on inertia")
        return self.depth[s]

    def lower_group(self, r) -> FrozenSet[int]:
        r = rat(r)
        if r < 0:
            raise DomainError("lower numbering needs r >= 0")
        return frozenset([self.group.identity] + [s for s, d in self.depth.items() if d >= r])

    def depth_values(self) -> List[Fraction]:
        return sorted(set(self.depth.values()))

    # -- serialization -------------------------------------------------
    def to_json(self) -> dict:
        return {
            "elements": list(self.group.labels),
            "mul": [list(r) for r in self.group.mul],
            "inertia": sorted(self.inertia),
            "depth": {str(k): fmt(v) for k, v in sorted(self.depth.items())},
            "e": self.e,
            "e_base": self.e_base,
        }

    @classmethod
    def from_json(cls, d: dict) -> "RamDatum":
        try:
            g = FiniteGroup(d["mul"], d.get("elements"))
            D = cls(g, d["inertia"], {int(k): v for k, v in d.get("depth", {}).items()}, d.get("e_base", 1))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, DomainError):
                raise
            raise DomainError(f"malformed datum: {exc}") from exc
        if "e" in d and int(d["e"]) != D.e:
            raise DomainError("field 'e' disagrees with the inertia size")
        return D

    def __repr__(self):
        return f"RamDatum(order={self.order}, e={self.e}, e_base={self.e_base}, depths={self.depth_values()})"


@dataclass(frozen=True)
class Breaks:
    """Last lower break, last upper break and conductor shift."""

    ell: Fraction
    u: Fraction
    c: Fraction

    def to_json(self) -> dict:
        return {"ell": fmt(self.ell), "u": fmt(self.u), "c": fmt(self.c)}


# -- constructors --------------------------------------------------------

def trivial_datum(e_base: int = 1) -> RamDatum:
    return RamDatum(FiniteGroup([[0]], ["1"]), [0], {}, e_base)


def cyclic_datum(depths: Sequence, e_base: int = 1) -> RamDatum:
    """Totally ramified cyclic group ``<g>`` with ``depth(g^k) = depths[k-1]``."""
    n = len(depths) + 1
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    labels = ["1"] + [f"g^{k}" for k in range(1, n)]
    return RamDatum(FiniteGroup(table, labels), range(n), {k: depths[k - 1] for k in range(1, n)}, e_base)


def unramified_datum(f: int, e_base: int = 1) -> RamDatum:
    table = [[(a + b) % f for b in range(f)] for a in range(f)]
    return RamDatum(FiniteGroup(table, ["1"] + [f"Fr^{k}" for k in range(1, f)]), [0], {}, e_base)


# -- Hasse-Herbrand ------------------------------------------------------

def hh_phi(D: RamDatum) -> PLFun:
    """phi(x) = sum over inertia of min(depth, x), identity counted as x."""
    vals = D.depth_values()
    positive = [v for v in vals if v > 0]
    # slope on (a, b) is the number of inertia elements of depth > a
    slopes = []
    edges = [Fraction(0)] + positive
    for a in edges:
        slopes.append(1 + sum(1 for d in D.depth.values() if d > a))
    return PLFun(positive, slopes)


def hh_psi(D: RamDatum) -> PLFun:
    return hh_phi(D).inverse()


def breaks(D: RamDatum) -> Breaks:
    ell = max(D.depth.values(), default=Fraction(0))
    c = sum(D.depth.values(), Fraction(0))
    u = hh_phi(D)(ell)
    if c != u - ell:
        raise InvariantError("conductor-shift", f"c={c} but u-ell={u - ell}")
    return Breaks(ell, u, c)


def upper_group(D: RamDatum, s) -> FrozenSet[int]:
    s = rat(s)
    if s < 0:
        raise DomainError("upper numbering needs s >= 0")
    return D.lower_group(hh_psi(D)(s))


def restrict_datum(D: RamDatum, sub: Iterable[int]) -> Tuple[RamDatum, List[int]]:
    """Datum of L/K for the subgroup fixing K; depths are unchanged.

    The base ramification of K over F is ``e_base * [I : I cap H]``.
    """
    g, ids = D.group.subgroup_table(sub)
    pos = {x: i for i, x in enumerate(ids)}
    inert = [pos[x] for x in ids if x in D.inertia]
    dep = {pos[x]: D.depth[x] for x in ids if x in D.depth}
    e_sub = len(inert)
    return RamDatum(g, inert, dep, D.e_base * (D.e // e_sub)), ids


def quotient_datum(D: RamDatum, N: Iterable[int]) -> RamDatum:
    """Datum of K/E where K is the fixed field of the normal subgroup N.

    The depth of a nontrivial inertia coset is phi_{L/K} applied to the
    largest depth among its inertia lifts (Herbrand).
    """
    N = frozenset(N)
    if not D.group.is_normal(N):
        raise DomainError("N is not a normal subgroup")
    sub, _ = restrict_datum(D, N)
    phi_lk = hh_phi(sub)
    qg, proj = D.group.quotient(N)
    q_inertia = {proj[s] for s in D.inertia}
    qdepth: Dict[int, Fraction] = {}
    for s in D.inertia:
        q = proj[s]
        if q == qg.identity:
            continue
        d = D.depth[s]
        if q not in qdepth or d > qdepth[q]:
            qdepth[q] = d
    qdepth = {q: phi_lk(d) for q, d in qdepth.items()}
    return RamDatum(qg, q_inertia, qdepth, D.e_base)


# -- equivalent conditions -----------------------------------------------

@dataclass(frozen=True)
class TfaeFlags:
    shift_is_conductor: bool
    beyond_last_break: bool
    next_group_trivial: bool

    def as_tuple(self) -> Tuple[bool, bool, bool]:
        return (self.shift_is_conductor, self.beyond_last_break, self.next_group_trivial)

    def consistent(self) -> bool:
        return len(set(self.as_tuple())) == 1


def check_tfae_combinatorial(D: RamDatum, s) -> TfaeFlags:
    """Three equivalent conditions at level s.

    1. ``c = s - psi(s)``;  2. ``psi(s) >= ell`` or ``s >= u``;
    3. the lower group just above ``psi(s)`` is trivial.
    """
    s = rat(s)
    if s < 0:
        raise DomainError("s must be >= 0")
    b = breaks(D)
    x = hh_psi(D)(s)
    b1 = b.c == s - x
    b2 = x >= b.ell or s >= b.u
    above = [d for d in D.depth.values() if d > x]
    eps = (min(above) - x) / 2 if above else Fraction(1)
    b3 = D.lower_group(x + eps) == frozenset([D.group.identity])
    return TfaeFlags(b1, b2, b3)


@dataclass(frozen=True)
class IntersectionCheck:
    """Upper groups of M/E intersected with the inertia of M/L, compared with those of M/L."""

    at: bool
    just_above: bool
    stable_beyond: Optional[bool]

    @property
    def holds(self) -> bool:
        return self.at and self.just_above and self.stable_beyond is not False


def _upper_jumps(D: RamDatum) -> List[Fraction]:
    phi = hh_phi(D)
    return sorted({phi(v) for v in D.depth_values()})


def check_inertia_intersections(D: RamDatum, N: Iterable[int], s) -> IntersectionCheck:
    """For M/E with datum D and the normal subgroup N fixing L.

    Checks ``G_E^s cap G_L^0 = G_L^{psi_{L/E}(s)}`` and the same just above
    s; when ``G_E^s`` lies in ``G_L^0`` also checks that for every later
    jump t the groups agree and ``psi_{L/E}(t) - t`` stays constant.
    """
    s = rat(s)
    N = frozenset(N)
    DL, ids = restrict_datum(D, N)
    psi = hh_psi(quotient_datum(D, N))
    phi = psi.inverse()

    def lifted(sub):
        return frozenset(ids[i] for i in sub)

    inert_L = lifted(DL.inertia)
    crit = set(_upper_jumps(D)) | {phi(v) for v in _upper_jumps(DL)}
    later = sorted(v for v in crit if v > s)
    eps = (later[0] - s) / 2 if later else Fraction(1)

    def agree(x):
        return upper_group(D, x) & inert_L == lifted(upper_group(DL, psi(x)))

    at, above = agree(s), agree(s + eps)
    stable = None
    if upper_group(D, s) <= inert_L:
        shift = psi(s) - s
        pts = [s] + later + [later[-1] + 1 if later else s + 1]
        stable = all(lifted(upper_group(DL, psi(x))) == upper_group(D, x) and psi(x) - x == shift for x in pts)
    return IntersectionCheck(at, above, stable)


# -- adapted extensions --------------------------------------------------

@dataclass(frozen=True)
class AdaptedExtension:
    """Result of :func:`find_adapted_extension`."""

    descriptor: object
    e: int
    breaks: Breaks
    compositum: object
    compositum_e: int
    compositum_u: Fraction
    compositum_ok: bool

    def to_json(self) -> dict:
        return {
            "descriptor": self.descriptor.to_json(),
            "e": self.e,
            "breaks": self.breaks.to_json(),
            "tame_compositum": {
                "descriptor": self.compositum.to_json(),
                "e": self.compositum_e,
                "u": fmt(self.compositum_u),
                "ok": self.compositum_ok,
            },
        }


def find_adapted_extension(catalog: Sequence, n: int, eps, prec: Optional[int] = None) -> AdaptedExtension:
    """First catalog tower L/E with ``n | e(L/E)`` and ``u(L/E) < eps``.

    Each candidate is realized as explicit Laurent series and its datum
    computed from the automorphisms.  The winner is then enlarged by a
    tame step of degree prime to ``p * e(L/E)``, and the enlarged tower
    is checked to satisfy the same two conditions.
    """
    from . import localfield as lf

    n = int(n)
    eps = rat(eps)
    if n < 1 or eps <= 0:
        raise DomainError("need n >= 1 and eps > 0")
    if not catalog:
        raise DomainError("empty catalog")
    for desc in catalog:
        ext = lf.realize_tower(desc, prec)
        D = lf.realize_ramdatum(ext)
        b = breaks(D)
        if D.e % n or b.u >= eps:
            continue
        comp = lf.tame_compositum(desc, D.e)
        cext = lf.realize_tower(comp, prec)
        cD = lf.realize_ramdatum(cext)
        cb = breaks(cD)
        ok = cD.e % n == 0 and cb.u < eps and cb.u == b.u
        return AdaptedExtension(desc, D.e, b, comp, cD.e, cb.u, ok)
    raise NotFoundError(f"no catalog tower has {n} | e and u < {eps}")
