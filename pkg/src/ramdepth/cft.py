"""Unit-group quotients of F = F_p((t)) and their ramification filtrations.

By local class field theory a finite-index subgroup U of F^x containing
t and the Teichmuller units corresponds to a totally ramified abelian
extension E/F with Galois group F^x/U, and the upper-numbering
subgroup Gal(E/F)^s is the image of the unit group U^(ceil s).  This
module models ``U^1 / U^N`` as a finitely presented abelian group and
reads everything off a Smith normal form.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np
from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_decomp

from .errors import DomainError, InvariantError
from .finitefield import get_field
from .groups import FiniteGroup
from .ramification import RamDatum
from .rationals import fmt, is_prime
from .series import LaurentSeries


# -- exponent sets ---------------------------------------------------------

@dataclass(frozen=True)
class ExponentSet:
    """Finitely many exponents plus an optional tail ``{n >= tail}``."""

    finite: FrozenSet[int] = frozenset()
    tail: Optional[int] = None

    def __contains__(self, n: int) -> bool:
        return n in self.finite or (self.tail is not None and n >= self.tail)

    def members_below(self, N: int) -> List[int]:
        return [n for n in range(1, N) if n in self]

    def bound(self) -> int:
        """Largest element that must be listed before the tail takes over."""
        return max(list(self.finite) + ([self.tail] if self.tail is not None else []), default=0)

    @classmethod
    def parse(cls, text: str) -> "ExponentSet":
        """Read strings like ``"3.."`` or ``"2,4.."``."""
        finite, tail = set(), None
        for part in text.replace(" ", "").split(","):
            if not part:
                continue
            if part.endswith(".."):
                tail = int(part[:-2])
            else:
                finite.add(int(part))
        return cls(frozenset(finite), tail)

    def __str__(self):
        parts = [str(n) for n in sorted(self.finite)]
        if self.tail is not None:
            parts.append(f"{self.tail}..")
        return ",".join(parts)


# -- words ---------------------------------------------------------------

_WORD = re.compile(r"^1\+(?:(\d+)\*)?t(?:\^(\d+))?$")


def parse_word(word: str) -> Tuple[str, int, int]:
    """``"t"``, ``"zeta"`` or ``"1+a*t^n"``; returns (kind, a, n)."""
    w = word.replace(" ", "")
    if w in ("t", "zeta"):
        return (w, 0, 0)
    m = _WORD.match(w)
    if not m:
        raise DomainError(f"cannot read unit word {word!r}")
    a = int(m.group(1) or 1)
    n = int(m.group(2) or 1)
    return ("unit", a, n)


def _digits(u: LaurentSeries, N: int) -> List[int]:
    """Greedy coordinates of a principal unit on the generators 1+t^i, i < N."""
    F = u.field
    p = F.p
    out = [0] * (N - 1)
    for i in range(1, N):
        c = u.coefficient(i)
        if c:
            out[i - 1] = c
            g = LaurentSeries.one(F, N).add_scalar(1, i)
            u = u * (g ** c).inverse()
    if not (u.add_scalar(F.neg(1))).truncate(N).is_zero():
        raise InvariantError("unit-digits", "residual unit after peeling digits")
    return out


class UnitQuotient:
    """F^x / U at precision N, with U generated by words.

    Ambient coordinates are ``[v_t, v_zeta, d_1, ..., d_(N-1)]``: the
    exponent of t, of a generator of F_p^x, and of ``1+t^i``.
    """

    def __init__(self, p: int, gens: Sequence[str], N: int):
        if not is_prime(p):
            raise DomainError(f"p={p} is not prime")
        self.p, self.N = p, int(N)
        self.gens = tuple(gens)
        F = self.field = get_field(p, 1)
        n = N + 1
        rows = []
        # relations of the ambient group: zeta^(p-1) = 1 and p-th powers of 1+t^i
        r = [0] * n
        r[1] = p - 1
        rows.append(r)
        for i in range(1, N):
            g = LaurentSeries.one(F, N).add_scalar(1, i)
            r = [0] * n
            r[1 + i] = p
            d = _digits(g ** p, N)
            for k, c in enumerate(d):
                r[2 + k] -= c
            rows.append(r)
        self.n_relations = len(rows)
        for w in gens:
            rows.append(self.word_vector(w))
        self.relations = rows
        M = Matrix(rows)
        S, P, Q = smith_normal_decomp(M)
        diag = [int(S[i, i]) if i < min(S.shape) else 0 for i in range(n)]
        self._Q = np.array(Q.tolist(), dtype=object)
        self._Qinv = np.array(Q.inv().tolist(), dtype=object)
        self._diag = diag
        self.keep = [i for i, d in enumerate(diag) if d != 1]
        self.invariants = [diag[i] for i in self.keep]
        if any(d == 0 for d in self.invariants):
            self.finite = False
        else:
            self.finite = True

    # -- coordinates -----------------------------------------------------
    def word_vector(self, word: str) -> List[int]:
        kind, a, m = parse_word(word)
        v = [0] * (self.N + 1)
        if kind == "t":
            v[0] = 1
        elif kind == "zeta":
            v[1] = 1
        else:
            if m >= self.N:
                return v
            if a % self.p == 0:
                raise DomainError("unit words need a coefficient prime to p")
            u = LaurentSeries.one(self.field, self.N).add_scalar(a % self.p, m)
            for k, c in enumerate(_digits(u, self.N)):
                v[2 + k] = c
        return v

    def project(self, vec: Sequence[int]) -> Tuple[int, ...]:
        """Ambient coordinate vector to quotient coordinates (reduced mod invariants)."""
        x = np.array(list(vec), dtype=object) @ self._Q
        return tuple(int(x[i]) % self._diag[i] if self._diag[i] else int(x[i]) for i in self.keep)

    def project_word(self, word: str) -> Tuple[int, ...]:
        return self.project(self.word_vector(word))

    @property
    def order(self) -> int:
        if not self.finite:
            raise DomainError("quotient is infinite")
        out = 1
        for d in self.invariants:
            out *= d
        return out

    def elements(self) -> List[Tuple[int, ...]]:
        return [tuple(x) for x in product(*[range(d) for d in self.invariants])]

    def add(self, a, b):
        return tuple((x + y) % d for x, y, d in zip(a, b, self.invariants))

    def span(self, vecs: Sequence[Tuple[int, ...]]) -> FrozenSet[Tuple[int, ...]]:
        zero = tuple(0 for _ in self.invariants)
        out = {zero}
        frontier = [zero]
        while frontier:
            new = []
            for a in frontier:
                for v in vecs:
                    b = self.add(a, v)
                    if b not in out:
                        out.add(b)
                        new.append(b)
            frontier = new
        return frozenset(out)

    def filtration_image(self, level: int) -> FrozenSet[Tuple[int, ...]]:
        """Image of the units U^level (level >= 1) in the quotient."""
        level = max(level, 1)
        gens = [self.project_word(f"1+t^{i}") for i in range(level, self.N)]
        return self.span(gens)

    def basis_preimage(self, i: int) -> List[int]:
        """An ambient vector mapping to the i-th quotient basis vector."""
        return [int(x) for x in self._Qinv[self.keep[i]]]

    def to_json(self) -> dict:
        return {"p": self.p, "N": self.N, "generators": list(self.gens), "invariants": self.invariants}


def counterexample_set(p: int) -> ExponentSet:
    """Exponent set of the SL_p counterexample: n >= 3, or {2} plus n >= 4 when p = 2."""
    return ExponentSet(frozenset([2]), 4) if p == 2 else ExponentSet(frozenset(), 3)


def unit_quotient(p: int, S: ExponentSet, N: int) -> UnitQuotient:
    """F^x / <t, F_p^x, 1+t^n (n in S)> at precision N."""
    if N <= S.bound() + 2:
        raise DomainError(f"precision N={N} must exceed max(S)+2={S.bound() + 2}")
    if S.tail is None or any(n < 1 for n in S.finite):
        raise DomainError("S must be a subset of positive integers containing a tail")
    words = ["t", "zeta"] + [f"1+t^{n}" for n in S.members_below(N)]
    return UnitQuotient(p, words, N)


def intermediate_quotient(uq: UnitQuotient, extra_gens: Sequence[str]):
    """Quotient by U enlarged by extra words, with the natural surjection.

    Returns ``(new quotient, surjection)`` where the surjection maps quotient
    coordinates of ``uq`` to those of the new quotient.
    """
    new = UnitQuotient(uq.p, list(uq.gens) + list(extra_gens), uq.N)
    images = [new.project(uq.basis_preimage(i)) for i in range(len(uq.invariants))]

    def surjection(x):
        out = tuple(0 for _ in new.invariants)
        for c, img in zip(x, images):
            for _ in range(c):
                out = new.add(out, img)
        return out

    return new, surjection


# -- upper filtration --------------------------------------------------------

@dataclass
class AbelianRamification:
    """Upper filtration s -> image of U^(ceil s) on the integer grid."""

    quotient: UnitQuotient
    levels: Dict[int, FrozenSet[Tuple[int, ...]]]
    breaks: List[int]

    @property
    def last_break(self) -> int:
        return self.breaks[-1] if self.breaks else 0

    def subgroup(self, s) -> FrozenSet[Tuple[int, ...]]:
        """Gal^s for rational s >= 0."""
        s = Fraction(s)
        if s <= 0:
            return self.levels[1]
        n = -((-s.numerator) // s.denominator)
        top = max(self.levels)
        return self.levels[min(n, top)]

    def upper_depth(self, x) -> int:
        """Largest integer n with x in Gal^n."""
        best = 0
        for n in sorted(self.levels):
            if x in self.levels[n]:
                best = n
        return best

    def to_ramdatum(self) -> RamDatum:
        """Datum whose depths are psi-pullbacks of the upper depths."""
        uq = self.quotient
        elems = uq.elements()
        pos = {x: i for i, x in enumerate(elems)}
        table = [[pos[uq.add(a, b)] for b in elems] for a in elems]
        labels = ["(" + ",".join(map(str, x)) + ")" for x in elems]
        g = FiniteGroup(table, labels, check=False)

        def psi(v):
            # psi(v) = integral_0^v dw / |Gal^w|
            total, w = Fraction(0), 0
            while w < v:
                total += Fraction(1, len(self.subgroup(w + 1)))
                w += 1
            return total

        zero = pos[tuple(0 for _ in uq.invariants)]
        depth = {pos[x]: psi(self.upper_depth(x)) for x in elems if pos[x] != zero}
        return RamDatum(g, range(len(elems)), depth, 1)

    def to_json(self) -> dict:
        return {
            "breaks": self.breaks,
            "d": self.last_break,
            "orders": {str(n): len(h) for n, h in sorted(self.levels.items())},
        }


def upper_filtration(uq: UnitQuotient) -> AbelianRamification:
    if not uq.finite:
        raise DomainError("filtration needs a finite quotient")
    levels = {n: uq.filtration_image(n) for n in range(1, uq.N + 1)}
    if levels[1] != frozenset(uq.elements()):
        raise InvariantError("filtration-exhaustive", "principal units do not surject")
    breaks = [n for n in range(1, uq.N) if levels[n] != levels[n + 1]]
    if levels[uq.N]:
        if len(levels[uq.N]) != 1:
            raise InvariantError("filtration-separated", "U^N has nontrivial image")
    # images can only drop at integers; jumps must be integral
    assert all(isinstance(b, int) for b in breaks)
    return AbelianRamification(uq, levels, breaks)


def _is_cyclic(uq: UnitQuotient, H) -> bool:
    return any(len(uq.span([h])) == len(H) for h in H)


def counterexample_report(p: int, N: Optional[int] = None) -> dict:
    """Numbers behind the SL_p counterexample at the prime p."""
    if not is_prime(p) or p > 7:
        raise DomainError("p must be a prime <= 7")
    S = counterexample_set(p)
    N = N or S.bound() + 4
    uq = unit_quotient(p, S, N)
    ar = upper_filtration(uq)
    d = ar.last_break
    top = ar.subgroup(d)
    uq2, surj = intermediate_quotient(uq, ["1+t"])
    ar2 = upper_filtration(uq2)
    image = {surj(x) for x in top}
    iso = len(image) == len(top) == uq2.order
    D = ar.to_ramdatum()
    from .ramification import breaks as _breaks

    b = _breaks(D)
    return {
        "p": p,
        "S": str(S),
        "N": N,
        "quotient_invariants": uq.invariants,
        "breaks": ar.breaks,
        "d": d,
        "gamma_d_order": len(top),
        "gamma_d_cyclic": _is_cyclic(uq, top),
        "filtration_orders": ar.to_json()["orders"],
        "intermediate": {
            "extra": ["1+t"],
            "invariants": uq2.invariants,
            "breaks": ar2.breaks,
            "gamma_d_maps_isomorphically": iso,
        },
        "datum_breaks": b.to_json(),
    }
