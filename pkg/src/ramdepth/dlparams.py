"""Moy-Prasad types, Deligne-Lusztig parameters, toral characters, depth zero.

A Moy-Prasad type is a point x of the standard apartment, a depth
r > 0 and a coefficient vector X on the graded piece at grade -r (the
dual Lie algebra is identified with the Lie algebra by the trace form).
Multiplying by a scalar alpha of valuation r moves X to grade 0, where
it becomes a matrix in the Lie algebra of the reductive quotient; the
parameter is the characteristic polynomial of that matrix together with
the class of alpha.

The class of alpha is recorded through its angular component: the
residue of alpha / tau_r, where tau_r is the designated root of t, a
power of the uniformizer reached by the tame steps at the bottom of the
tower (w^M = t exactly).  Scaling alpha by a unit c scales the
angular component by c and the invariants by j_c, so the pair can be
normalized to angular component 1; that normalized vector is the
canonical form.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from . import gfmatrix as gm
from .errors import DomainError, InvariantError
from .finitefield import GF, get_field
from .localfield import (AdditiveCharacter, TowerDescriptor, TowerExtension, character_pair, realize_ramdatum,
                         realize_tower, subextension_subgroup)
from .ramification import breaks
from .rationals import fmt, lcm, prime_to, rat
from .rootdata import (AffineWeylElement, ApartmentPoint, DualTorsionPoint, GradedModel, RootDatum,
                       affine_weyl_ball, act_affine_weyl, frobenius_fixed, frobenius_solutions, graded_piece,
                       reductive_quotient)
from .series import LaurentSeries


def encode(F: GF, a: int) -> List[int]:
    """Field element as its coefficient array over the prime field."""
    return [int(c) for c in F.vec[a]]


# -- Moy-Prasad types -------------------------------------------------------------

class MPType:
    """A point x, a depth r and X on the grade -r piece over the residue field ``field``."""

    def __init__(self, rd: RootDatum, x: ApartmentPoint, r, X: Sequence[int], field: GF):
        r = rat(r)
        if r <= 0:
            raise DomainError("depth must be positive")
        self.rd, self.x, self.r, self.field = rd, x, r, field
        self.e = lcm(x.e, r.denominator)
        self.model = graded_piece(rd, x, -r, self.e, field)
        self.X = self.model.check(X)

    def __repr__(self):
        return f"MPType({self.rd}, x={self.x.to_json()}, r={fmt(self.r)}, X={list(self.X)})"

    def __eq__(self, other):
        return isinstance(other, MPType) and (self.rd, self.x, self.r, self.X, self.field) == (
            other.rd, other.x, other.r, other.X, other.field)

    def __hash__(self):
        return hash((self.rd, self.x, self.r, self.X))

    def matrix(self) -> List[List[int]]:
        return self.model.to_matrix(self.X)

    def transported(self, w: AffineWeylElement) -> "MPType":
        model, coeffs = act_affine_weyl(w, self.model, self.X)
        return MPType(self.rd, model.x, self.r, coeffs, self.field)

    def scaled(self, c: int) -> "MPType":
        return MPType(self.rd, self.x, self.r, [self.field.mul(c, a) for a in self.X], self.field)

    def to_json(self) -> dict:
        return {
            "group": self.rd.to_json(),
            "x": self.x.to_json(),
            "r": fmt(self.r),
            "field": [self.field.p, self.field.k],
            "X": [encode(self.field, a) for a in self.X],
        }


def sweep(rd: RootDatum, x: ApartmentPoint, r, field: GF) -> List[MPType]:
    """Every coefficient vector on the grade -r piece."""
    from itertools import product
    probe = MPType(rd, x, r, [0] * graded_piece(rd, x, -rat(r), lcm(x.e, rat(r).denominator), field).dim, field)
    return [MPType(rd, x, r, v, field) for v in product(range(field.q), repeat=probe.model.dim)]


def mp_character(mt: MPType, W: Sequence[int]) -> Fraction:
    """Lambda_F(<W, X>) for W on the grade r piece: trace pairing, then trace to F_p over p."""
    F = mt.field
    wm = graded_piece(mt.rd, mt.x, mt.r, mt.e, F)
    if len(W) != wm.dim:
        raise DomainError(f"W must live on the grade {fmt(mt.r)} piece of dimension {wm.dim}")
    a, b = wm.to_matrix(W), mt.matrix()
    tr = 0
    n = mt.rd.n
    for i in range(n):
        for j in range(n):
            if a[i][j] and b[j][i]:
                tr = F.add(tr, F.mul(a[i][j], b[j][i]))
    return Fraction(F.trace_to_prime(tr), F.p)


# -- scalar choices ------------------------------------------------------------------

AlphaSpec = Union[None, LaurentSeries, Callable[[TowerExtension], LaurentSeries]]


@dataclass(frozen=True)
class AlphaChoice:
    """A tower E/F (over its bottom field) and an element alpha of E.

    ``alpha`` is a callable receiving the realized extension and returning
    alpha in top coordinates; ``None`` means the designated root tau_r.
    """

    desc: TowerDescriptor
    alpha: AlphaSpec = None
    label: str = ""

    def describe(self) -> str:
        return self.label or self.desc.name or "tower"


def tame_chain(desc: TowerDescriptor) -> Tuple[int, int]:
    """(level, M) where the level's uniformizer w satisfies w^M = t exactly."""
    level, M = 0, 1
    for i, st in enumerate(desc.steps, start=1):
        if st.kind == "artin_schreier":
            break
        if st.kind == "tame":
            M *= st.param
        level = i
    return level, M


def designated_root(ext: TowerExtension, r) -> Optional[LaurentSeries]:
    """tau_r in top coordinates, or None when r is not on the tame grid of the tower."""
    r = rat(r)
    level, M = tame_chain(ext.desc)
    k = r * M
    if k.denominator != 1:
        return None
    w = ext.tower.embedding(level, ext.n)
    return w ** int(k)


def default_alpha_choice(field: GF, r) -> AlphaChoice:
    """The smallest tame extension carrying tau_r, with alpha = tau_r."""
    r = rat(r)
    d = r.denominator
    if d % field.p == 0:
        raise DomainError("depth has p in its denominator; supply an explicit tower")
    if d == 1:
        return AlphaChoice(TowerDescriptor(field.p, field.k, (), 0, "F"), None, "t^r")
    from .localfield import tame, unramified
    f = 1
    while (field.q ** f - 1) % d:
        f += 1
    steps = ((unramified(f),) if f > 1 else ()) + (tame(d),)
    return AlphaChoice(TowerDescriptor(field.p, field.k, steps, 0, f"tame{d}"), None, "t^r")


@dataclass(frozen=True)
class Adaptedness:
    ok: bool
    clause: str
    e: int
    u: Fraction


@lru_cache(maxsize=None)
def check_adapted(desc: TowerDescriptor, r) -> Adaptedness:
    """r e(E/F) in Z and u(E/F) < r, with E/F Galois; the first failing clause is named."""
    r = rat(r)
    ext = realize_tower(desc.over(0))
    if not ext.is_galois:
        return Adaptedness(False, "E/F must be Galois", ext.e, Fraction(-1))
    br = breaks(realize_ramdatum(ext))
    if (r * ext.e).denominator != 1:
        return Adaptedness(False, f"r*e(E/F) = {fmt(r * ext.e)} is not an integer", ext.e, br.u)
    if not br.u < r:
        return Adaptedness(False, f"u(E/F) = {fmt(br.u)} is not below r = {fmt(r)}", ext.e, br.u)
    return Adaptedness(True, "", ext.e, br.u)


# -- parameters ----------------------------------------------------------------------------

@dataclass(frozen=True)
class DLParam:
    """Characteristic-polynomial invariants of the grade-0 image with the class of alpha.

    ``Z`` is computed with alpha itself and ``beta`` is the angular
    component of alpha, both in ``field``.  ``canonical`` is j_{1/beta}(Z),
    the representative with angular component 1.  ``reference`` names what
    beta is measured against: the designated tame root, or alpha itself
    when r is off the tame grid.
    """

    r: Fraction
    n: int
    field: GF
    Z: Tuple[int, ...]
    beta: int
    reference: str
    canonical: Tuple[int, ...]

    @property
    def nontrivial(self) -> bool:
        return any(self.Z)

    def class_string(self) -> str:
        F = self.field
        body = ",".join("[" + " ".join(str(c) for c in encode(F, a)) + "]" for a in self.canonical)
        return f"r={fmt(self.r)};ref={self.reference};Z=({body})"

    def key(self):
        """Hashable canonical key, comparable across fields of the same characteristic."""
        F = self.field
        vals = []
        for a in self.canonical:
            vals.append(_descend_prime_or_field(F, a))
        return (self.r, self.reference, tuple(vals))

    def to_json(self) -> dict:
        F = self.field
        return {
            "r": fmt(self.r),
            "field": [F.p, F.k],
            "Z": [encode(F, a) for a in self.Z],
            "beta": encode(F, self.beta),
            "reference": self.reference,
            "canonical": [encode(F, a) for a in self.canonical],
            "orbit_min": [encode(F, a) for a in orbit_minimum(F, self.Z)],
            "nontrivial": self.nontrivial,
            "class": self.class_string(),
        }


def _descend_prime_or_field(F: GF, a: int):
    """Prime-field elements are encoded alike in every GF(p, k); others keep their field tag."""
    if a < F.p:
        return (1, a)
    return (F.k, a)


def j_scale(F: GF, c: int, Z: Sequence[int]) -> Tuple[int, ...]:
    """j_c: c_i -> c^i c_i."""
    return tuple(F.mul(F.pow(c, i + 1), z) for i, z in enumerate(Z))


def orbit_minimum(F: GF, Z: Sequence[int]) -> Tuple[int, ...]:
    """Lexicographically least j_c image over c in F^x (the class with beta forgotten)."""
    return min(j_scale(F, c, Z) for c in range(1, F.q))


@lru_cache(maxsize=None)
def _alpha_data(choice: AlphaChoice, r: Fraction) -> Tuple[GF, int, str]:
    """(field of E, angular component of alpha, reference) for an adapted choice."""
    desc = choice.desc
    adapt = check_adapted(desc, r)
    if not adapt.ok:
        raise DomainError(f"(alpha, E) is not adapted: {adapt.clause}")
    ext = realize_tower(desc.over(0))
    tau = designated_root(ext, r)
    if choice.alpha is None:
        if tau is None:
            raise DomainError("r is off the tame grid of the tower; give alpha explicitly")
        alpha = tau
    else:
        alpha = choice.alpha(ext) if callable(choice.alpha) else choice.alpha
    if Fraction(alpha.valuation(), ext.e) != r:
        raise DomainError(f"val(alpha) = {fmt(Fraction(alpha.valuation(), ext.e))} differs from r = {fmt(r)}")
    if tau is None:
        return ext.field, 1, f"alpha@{choice.describe()}"
    ratio = alpha / tau
    if ratio.valuation() != 0:
        raise InvariantError("angular-component", "alpha / tau_r is not a unit")
    return ext.field, ratio.coefficient(0), "tame-root"


def dl_parameter(mt: MPType, choice: Optional[AlphaChoice] = None) -> DLParam:
    """Shift X to grade 0 by alpha and take characteristic-polynomial invariants."""
    choice = choice or default_alpha_choice(mt.field, mt.r)
    desc = choice.desc
    if desc.p != mt.field.p or desc.residue_deg != mt.field.k:
        raise DomainError("the tower must start from the residue field of the type")
    K, beta, reference = _alpha_data(choice, mt.r)
    emb = gm.embedding(K.p, mt.field.k, K.k)
    M = [[emb[a] for a in row] for row in mt.matrix()]
    base = gm.charpoly(K, M)
    Z = j_scale(K, beta, base)
    canonical = j_scale(K, K.inv(beta), Z)
    return DLParam(mt.r, mt.rd.n, K, Z, beta, reference, canonical)


def dl_equiv(d1: DLParam, d2: DLParam) -> bool:
    """Some c has Z2 = j_c(Z1) and beta2 = c beta1 (in a common field)."""
    if d1.r != d2.r:
        raise DomainError("parameters of different depths")
    if d1.reference != d2.reference or d1.n != d2.n:
        return False
    F1, F2 = d1.field, d2.field
    k = lcm(F1.k, F2.k)
    K = get_field(F1.p, k)
    m1, m2 = gm.embedding(F1.p, F1.k, k), gm.embedding(F2.p, F2.k, k)
    if F1.k != k and F2.k != k:
        raise DomainError("parameters stored over unrelated finite levels; compare at a matched level")
    b1, b2 = m1[d1.beta], m2[d2.beta]
    c = K.div(b2, b1)
    return j_scale(K, c, [m1[z] for z in d1.Z]) == tuple(m2[z] for z in d2.Z)


def same_parameter(d1: DLParam, d2: DLParam) -> bool:
    """Exact equality of canonical forms."""
    return d1.key() == d2.key()


@dataclass(frozen=True)
class Nondegeneracy:
    flag: bool
    witness: Optional[int]
    guaranteed: bool
    note: str = ""

    def to_json(self) -> dict:
        return {"nondegenerate": self.flag, "witness": self.witness, "guaranteed": self.guaranteed, "note": self.note}


def is_nondegenerate(mt: MPType, choice: Optional[AlphaChoice] = None) -> Nondegeneracy:
    """Invariant test: nontrivial iff some non-leading coefficient is nonzero.

    The equivalence with the orbit criterion is only asserted when r is
    p-integral; otherwise the flag is returned with guaranteed=False.
    """
    if choice is None and mt.r.denominator % mt.field.p == 0:
        # no tame root exists; the characteristic polynomial of X itself carries the same zero pattern
        coeffs = gm.charpoly(mt.field, mt.matrix())
        flag = any(coeffs)
        wit = next((i + 1 for i, c in enumerate(coeffs) if c), None)
    else:
        d = dl_parameter(mt, choice)
        flag = d.nontrivial
        wit = next((i + 1 for i, c in enumerate(d.Z) if c), None)
    guaranteed = prime_to(mt.r, mt.field.p)
    note = "" if guaranteed else "r is not p-integral: the invariant criterion is not guaranteed to detect degeneracy"
    return Nondegeneracy(flag, wit, guaranteed, note)


def stable_associate(m1: MPType, m2: MPType, choice: Optional[AlphaChoice] = None) -> bool:
    if m1.r != m2.r:
        raise DomainError("types of different depths")
    return dl_equiv(dl_parameter(m1, choice), dl_parameter(m2, choice))


@dataclass(frozen=True)
class RestrictedParam:
    """Class of a restricted parameter, represented by its canonical Deligne-Lusztig parameter."""

    param: DLParam

    def to_json(self) -> dict:
        out = self.param.to_json()
        out["kind"] = "restricted"
        return out


def restricted_param(mt: MPType, choice: Optional[AlphaChoice] = None) -> RestrictedParam:
    d = dl_parameter(mt, choice)
    if not d.nontrivial:
        raise DomainError("restricted parameters are attached to nondegenerate types only")
    return RestrictedParam(d)


# -- orbit oracles -------------------------------------------------------------------------

Mat = Tuple[Tuple[int, ...], ...]


def _freeze(m) -> Mat:
    return tuple(tuple(r) for r in m)


class ReductiveOrbits:
    """Orbits of the reductive quotient G_x(k) acting on residue matrices by conjugation.

    G_x(k) is generated by elementary matrices inside the blocks of x and
    by the diagonal torus (of determinant one for SL_n); orbits are closed
    under those generators by breadth-first search.
    """

    def __init__(self, rd: RootDatum, x: ApartmentPoint, field: GF):
        self.rd, self.x, self.F = rd, x, field
        rq = reductive_quotient(rd, x)
        self.roots = rq.roots
        F = field
        self.basis = F.subfield_basis(F.k)
        self.gamma = F.generator()
        self._orbit_of: Dict[Mat, int] = {}
        self._orbits: List[frozenset] = []

    def _neighbours(self, m: Mat) -> List[Mat]:
        F, n = self.F, self.rd.n
        out = []
        for (i, j) in self.roots:
            for a in self.basis:
                for s in (a, F.neg(a)):
                    # (1 + s E_ij) m (1 - s E_ij): row i += s row j, then column j -= s column i
                    rows = [list(r) for r in m]
                    rows[i] = [F.add(x, F.mul(s, y)) for x, y in zip(rows[i], rows[j])]
                    for k in range(n):
                        rows[k][j] = F.sub(rows[k][j], F.mul(s, rows[k][i]))
                    out.append(_freeze(rows))
        g, gi = self.gamma, F.inv(self.gamma)
        diags = []
        if self.rd.kind == "GL":
            for i in range(n):
                d = [1] * n
                d[i] = g
                diags.append(d)
        else:
            for i in range(n - 1):
                d = [1] * n
                d[i], d[i + 1] = g, gi
                diags.append(d)
        for d in diags:
            out.append(_freeze([[F.mul(F.mul(d[i], m[i][j]), F.inv(d[j])) for j in range(n)] for i in range(n)]))
        return out

    def orbit(self, m) -> frozenset:
        m = _freeze(m)
        k = self._orbit_of.get(m)
        if k is not None:
            return self._orbits[k]
        seen = {m}
        stack = [m]
        while stack:
            cur = stack.pop()
            for nb in self._neighbours(cur):
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        orb = frozenset(seen)
        self._orbits.append(orb)
        for a in orb:
            self._orbit_of[a] = len(self._orbits) - 1
        return orb


def _scaling_limit_zero(m: Mat) -> bool:
    """Some diagonal cocharacter contracts m to 0: no diagonal entries and an acyclic support."""
    n = len(m)
    if any(m[i][i] for i in range(n)):
        return False
    edges = {i: [j for j in range(n) if m[i][j]] for i in range(n)}
    state = [0] * n

    def cyclic(v):
        state[v] = 1
        for u in edges[v]:
            if state[u] == 1 or (state[u] == 0 and cyclic(u)):
                return True
        state[v] = 2
        return False

    return not any(state[v] == 0 and cyclic(v) for v in range(n))


_ORBITS: Dict[Tuple, ReductiveOrbits] = {}


def orbits_for(rd: RootDatum, x: ApartmentPoint, field: GF) -> ReductiveOrbits:
    key = (rd, x, field)
    if key not in _ORBITS:
        _ORBITS[key] = ReductiveOrbits(rd, x, field)
    return _ORBITS[key]


def orbit_oracle_degenerate(mt: MPType, field: Optional[GF] = None) -> bool:
    """Brute force: 0 lies in the closure of the G_x(field)-orbit of the grade-0 image."""
    K = field or mt.field
    emb = gm.embedding(K.p, mt.field.k, K.k)
    m = [[emb[a] for a in row] for row in mt.matrix()]
    orb = orbits_for(mt.rd, mt.x, K).orbit(m)
    return any(_scaling_limit_zero(a) for a in orb)


def associate_oracle(m1: MPType, m2: MPType, search_bound: int = 6) -> Optional[bool]:
    """True when an affine Weyl element of length <= bound carries (x1, X1) into the
    G_{x2}(k)-orbit of X2 at graded level; None when the bounded search finds nothing."""
    if m1.rd != m2.rd or m1.r != m2.r or m1.field != m2.field:
        raise DomainError("types must share group, depth and field")
    target = orbits_for(m2.rd, m2.x, m2.field).orbit(m2.matrix())
    for _, w in affine_weyl_ball(m1.rd, search_bound):
        if w.act_point(m1.x) != m2.x:
            continue
        moved = m1.transported(w)
        if _freeze(moved.matrix()) in target:
            return True
    return None


# -- toral characters --------------------------------------------------------------------

class ToralCharacter:
    """V -> Lambda_E(V, X) on the graded torus piece T(E) at level r - c_{E/F}.

    X is diagonal with entries ``coeffs[i] * tau^(-r)``, coefficients in the
    residue field of F; E/F must be Galois with r e in Z and u < r.
    """

    def __init__(self, desc: TowerDescriptor, coeffs: Sequence[int], r, chr: Optional[AdditiveCharacter] = None):
        self.desc = desc.over(0)
        self.r = r = rat(r)
        self.chr = chr or AdditiveCharacter(desc.p)
        ad = check_adapted(self.desc, r)
        if not ad.ok:
            raise DomainError(f"E is not adapted: {ad.clause}")
        self.ext = ext = realize_tower(self.desc)
        br = breaks(realize_ramdatum(ext))
        self.c = br.c
        self.level = r - br.c
        if (self.level * ext.e).denominator != 1:
            raise InvariantError("toral-level", "level is off the grid of E")
        self.coeffs = tuple(int(a) for a in coeffs)
        self.X = [self._x_entry(ext, a) for a in self.coeffs]

    def _x_entry(self, ext: TowerExtension, a: int) -> LaurentSeries:
        tau = designated_root(ext, self.r)
        if tau is None:
            raise DomainError("r is off the tame grid of E")
        emb = gm.embedding(ext.p, self.desc.residue_deg, ext.field.k)
        return tau.inverse().scale(emb[a])

    @property
    def rank(self) -> int:
        return len(self.coeffs)

    def representatives(self) -> List[Tuple[int, int, LaurentSeries]]:
        """(i, b, V): V = b w^m in coordinate i, b over an F_p-basis of the residue field."""
        ext = self.ext
        m = int(self.level * ext.e)
        return [(i, b, ext.monomial(b, m)) for i in range(self.rank) for b in ext.residue_basis()]

    def value(self, i: int, V: LaurentSeries) -> Fraction:
        return character_pair(self.chr, self.ext, V, self.X[i])

    def table(self) -> Dict[Tuple[int, int], Fraction]:
        return {(i, b): self.value(i, V) for i, b, V in self.representatives()}

    def depth(self) -> Fraction:
        return self.level

    def to_json(self) -> dict:
        return {
            "tower": self.desc.to_json(),
            "r": fmt(self.r),
            "level": fmt(self.level),
            "X": list(self.coeffs),
            "table": [[i, b, fmt(v)] for (i, b), v in sorted(self.table().items())],
        }


@dataclass(frozen=True)
class NormCompatibility:
    rows: Tuple[Tuple[int, int, Fraction, Fraction], ...]

    @property
    def holds(self) -> bool:
        return all(a == b for _, _, a, b in self.rows)


def norm_compatibility(small: TowerDescriptor, big: TowerDescriptor, coeffs: Sequence[int], r) -> NormCompatibility:
    """Compare chi_{X,E'}(1+V') with chi_{X,E}(Nm_{E'/E}(1+V')) on every graded representative V' of E'.

    Both sides are computed inside the realization of E': the norm is a
    product over the subgroup fixing E, the trace of E/F a sum over coset
    representatives of that subgroup.
    """
    n_small = len(small.steps)
    if (big.p, big.residue_deg) != (small.p, small.residue_deg) or big.steps[:n_small] != small.steps:
        raise DomainError("the larger tower must extend the smaller one")
    r = rat(r)
    chi_small = ToralCharacter(small, coeffs, r)
    chi_big = ToralCharacter(big, coeffs, r)
    ext = chi_big.ext
    H = subextension_subgroup(ext, n_small)
    tab = ext.table()
    reps, covered = [], set()
    for g in range(len(ext.automorphisms)):
        if g in covered:
            continue
        reps.append(g)
        covered |= {tab[g][h] for h in H}
    rows = []
    for i, b, V in chi_big.representatives():
        lhs = chi_big.value(i, V)
        unit = ext.one() + V
        N = None
        for h in H:
            c = ext.apply(h, unit)
            N = c if N is None else N * c
        y = N - ext.one()
        if not y.is_zero() and Fraction(y.valuation(), ext.e) < chi_small.level:
            raise InvariantError("norm-level", "the norm falls below the level of the smaller character")
        prod = y * chi_big.X[i]
        tr = None
        for g in reps:
            c = ext.apply(g, prod)
            tr = c if tr is None else tr + c
        rhs = chi_big.chr.on_base(ext.descend(tr, stop=1))
        rows.append((i, b, lhs, rhs))
    return NormCompatibility(tuple(rows))


# -- depth zero --------------------------------------------------------------------------

@dataclass(frozen=True)
class DepthZeroParam:
    """A Weyl orbit of torsion points of the dual torus, sorted; the first member is canonical."""

    rd: RootDatum
    orbit: Tuple[Tuple[Fraction, ...], ...]

    @property
    def canonical(self) -> Tuple[Fraction, ...]:
        return self.orbit[0]

    def to_json(self) -> dict:
        return {"canonical": [fmt(a) for a in self.canonical], "orbit": [[fmt(a) for a in v] for v in self.orbit]}


def _orbit_param(rd: RootDatum, pt: Sequence) -> DepthZeroParam:
    orb = DualTorsionPoint.make(rd, pt).orbit()
    return DepthZeroParam(rd, tuple(orb))


def depth_zero_space(rd: RootDatum, q: int, sigma=None, denominator_bound: Optional[int] = None) -> List[DepthZeroParam]:
    """Weyl orbits of torsion points with chi^q in the orbit of chi.

    Without a bound the solutions of q x = w x are found exactly from Smith
    normal forms of q - w.  With ``denominator_bound`` every point whose
    coordinates have denominators up to the bound is tested directly.
    """
    if sigma not in (None, "identity", "id"):
        raise DomainError("only the split case is implemented")
    if denominator_bound is None:
        pts = frobenius_solutions(rd, q)
    else:
        pts = _bounded_points(rd.rank, denominator_bound)
    out = {}
    for v in pts:
        pt = DualTorsionPoint.make(rd, v)
        if frobenius_fixed(pt, q):
            d = _orbit_param(rd, v)
            out[d.canonical] = d
    return [out[k] for k in sorted(out)]


def _bounded_points(rank: int, bound: int):
    from itertools import product
    vals = sorted({Fraction(a, b) for b in range(1, bound + 1) for a in range(b)})
    return product(vals, repeat=rank)


def depth_zero_pushforward(rd: RootDatum, x: ApartmentPoint, theta: Sequence[Sequence], q: Optional[int] = None) -> DepthZeroParam:
    """The Weyl orbit through a W_x-orbit theta of torsion points, canonicalized."""
    if not theta:
        raise DomainError("theta must be a nonempty orbit")
    rq = reductive_quotient(rd, x)
    pts = [DualTorsionPoint.make(rd, v) for v in theta]
    local = set(pts[0].orbit(rq.weyl))
    if {p.coords for p in pts} != local:
        raise DomainError("theta is not a single orbit of the Weyl group at x")
    if q is not None and not frobenius_fixed(pts[0], q, weyl=rq.weyl):
        raise DomainError("theta is not Frobenius stable at x")
    return _orbit_param(rd, pts[0].coords)
