"""Named verification suites: each runs one family of exact checks and reports items.

An item is ``{"name", "ok", "detail"}``; a suite passes when every item
passes.  Items are sorted by name so reports are reproducible.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import cft
from . import dlparams as dl
from . import localfield as lf
from . import ramification as rm
from . import rootdata as rdm
from .errors import DomainError
from .finitefield import get_field
from .rationals import fmt, rat


@dataclass
class Item:
    name: str
    ok: bool
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


@dataclass
class Context:
    seed: int = 0
    prec: Optional[int] = None
    tower: Optional[lf.TowerDescriptor] = None


# -- towers ---------------------------------------------------------------------

ALIASES = {
    "AS3": "F3:as1",
    "AS5": "F5:as1",
    "S3": "F3:tame2/as1 (S3)",
    "D5": "F5:tame2/as1 (D5)",
}


def catalog_by_name() -> Dict[str, lf.TowerDescriptor]:
    return {d.name: d for d in lf.hh_catalog()}


def resolve_tower(ref: str) -> lf.TowerDescriptor:
    """A catalog name, a short alias, or a JSON descriptor (inline or a file path)."""
    cat = catalog_by_name()
    name = ALIASES.get(ref, ref)
    if name in cat:
        return cat[name]
    text = ref
    if not ref.lstrip().startswith("{"):
        try:
            with open(ref) as fh:
                text = fh.read()
        except OSError:
            raise DomainError(f"unknown tower {ref!r}; known names: {sorted(cat)} and aliases {sorted(ALIASES)}")
    try:
        return lf.TowerDescriptor.from_json(json.loads(text))
    except (ValueError, KeyError, TypeError) as exc:
        if isinstance(exc, DomainError):
            raise
        raise DomainError(f"malformed tower descriptor: {exc}") from exc


def _towers(ctx: Context, default: Sequence[lf.TowerDescriptor]) -> List[lf.TowerDescriptor]:
    return [ctx.tower] if ctx.tower is not None else list(default)


def _grid(ext: lf.TowerExtension, hi) -> List[Fraction]:
    e = ext.e
    return [Fraction(k, e) for k in range(1, int(rat(hi) * e) + 1)]


def _normal_levels(ext: lf.TowerExtension, D: rm.RamDatum):
    for lev in range(ext.b + 1, ext.n):
        N = lf.subextension_subgroup(ext, lev)
        if D.group.is_normal(N):
            yield lev, N


# -- ramification suites --------------------------------------------------------------

def suite_numbering(ctx: Context) -> List[Item]:
    """Lower groups are subgroups; upper numbering passes to quotients."""
    items = []
    for desc in _towers(ctx, lf.hh_catalog()):
        ext = lf.realize_tower(desc, ctx.prec)
        D = lf.realize_ramdatum(ext)
        ok = all(D.group.is_subgroup(D.lower_group(v)) for v in D.depth_values())
        bad = []
        for lev, N in _normal_levels(ext, D):
            Q = rm.quotient_datum(D, N)
            _, proj = D.group.quotient(N)
            for k in range(0, 3 * D.e * D.e_base + 1):
                s = Fraction(k, D.e * D.e_base)
                if {proj[g] for g in rm.upper_group(D, s)} != set(rm.upper_group(Q, s)):
                    bad.append([lev, fmt(s)])
        items.append(Item(desc.name, ok and not bad, {"quotient_failures": bad}))
    return items


def suite_hasse_herbrand(ctx: Context) -> List[Item]:
    """phi and psi are inverse, compose along Galois levels, and c is additive.

    The quotient and restricted data computed combinatorially are also
    compared with the data realized from the truncated and re-based towers.
    """
    items = []
    for desc in _towers(ctx, lf.hh_catalog()):
        ext = lf.realize_tower(desc, ctx.prec)
        D = lf.realize_ramdatum(ext)
        phi, psi = rm.hh_phi(D), rm.hh_psi(D)
        checks = {"inverse": phi.compose(psi) == rm.PLFun.identity()}
        br = rm.breaks(D)
        checks["c=u-ell"] = br.c == br.u - br.ell
        for lev, N in _normal_levels(ext, D):
            top, _ = rm.restrict_datum(D, N)
            bot = rm.quotient_datum(D, N)
            checks[f"phi-compose@{lev}"] = rm.hh_phi(bot).compose(rm.hh_phi(top)) == phi
            checks[f"psi-compose@{lev}"] = rm.hh_psi(top).compose(rm.hh_psi(bot)) == psi
            checks[f"c-additive@{lev}"] = rm.breaks(top).c + rm.breaks(bot).c == br.c
            lower = lf.realize_ramdatum(lf.realize_tower(lf.TowerDescriptor(
                desc.p, desc.residue_deg, desc.steps[:lev], desc.base_steps), ctx.prec))
            upper = lf.realize_ramdatum(lf.realize_tower(desc.over(lev), ctx.prec))
            checks[f"quotient-realized@{lev}"] = rm.hh_phi(lower) == rm.hh_phi(bot)
            checks[f"restrict-realized@{lev}"] = rm.hh_phi(upper) == rm.hh_phi(top)
        items.append(Item(desc.name, all(checks.values()), {"checks": checks, "breaks": br.to_json()}))
    return items


def suite_conductor_shift(ctx: Context) -> List[Item]:
    """Trace moves level s to s + c once s is past the last lower break, and c = u - ell."""
    default = [catalog_by_name()[n] for n in ("F3:as1", "F3:as2", "F5:as1", "F2:as1", "F3:tame2", "F3:unram2")]
    items = []
    for desc in _towers(ctx, default):
        ext = lf.realize_tower(desc, ctx.prec)
        br = rm.breaks(lf.realize_ramdatum(ext))
        fails = []
        for s in _grid(ext, br.ell + 2):
            if s <= br.ell:
                continue
            shift, surj = lf.trace_image_level(ext, s)
            if shift != br.c or not surj:
                fails.append([fmt(s), fmt(shift), surj])
        items.append(Item(desc.name, not fails and br.c == br.u - br.ell,
                          {"c": fmt(br.c), "u": fmt(br.u), "ell": fmt(br.ell), "failures": fails}))
    return items


def suite_breaks(ctx: Context) -> List[Item]:
    """c = u - ell on the realized datum of every tower."""
    items = []
    for desc in _towers(ctx, lf.hh_catalog()):
        br = rm.breaks(lf.realize_ramdatum(lf.realize_tower(desc, ctx.prec)))
        items.append(Item(desc.name, br.c == br.u - br.ell, br.to_json()))
    return items


def norm_range_expected(D: rm.RamDatum, s) -> bool:
    """Norm surjectivity on L_{>=s}: unramified, or nontrivial group and s beyond the last lower break."""
    s = rat(s)
    if D.e == 1:
        return True
    return D.order > 1 and s > rm.breaks(D).ell


def norm_range_items(descs: Sequence[lf.TowerDescriptor], prec=None) -> List[Item]:
    items = []
    for desc in descs:
        ext = lf.realize_tower(desc, prec)
        D = lf.realize_ramdatum(ext)
        br = rm.breaks(D)
        rows = []
        ok = True
        for s in _grid(ext, br.u + 1):
            ng = lf.norm_graded(ext, s)
            exp = norm_range_expected(D, s)
            good = ng.surjective == exp and (not ng.additive_applicable or ng.additive_match)
            ok &= good
            rows.append([fmt(s), ng.surjective, exp, ng.additive_match if ng.additive_applicable else None])
        items.append(Item(desc.name, ok, {"rows": rows}))
    return items


def suite_norm_range(ctx: Context) -> List[Item]:
    cat = catalog_by_name()
    return norm_range_items(_towers(ctx, [cat["F3:as1"], cat["F5:as1"]]), ctx.prec)


def suite_inertia_intersections(ctx: Context) -> List[Item]:
    items = []
    for desc in _towers(ctx, lf.hh_catalog()):
        ext = lf.realize_tower(desc, ctx.prec)
        D = lf.realize_ramdatum(ext)
        bad = []
        for lev, N in _normal_levels(ext, D):
            grid = D.e * D.e_base * 2
            for k in range(0, 3 * grid + 1):
                s = Fraction(k, grid)
                if not rm.check_inertia_intersections(D, N, s).holds:
                    bad.append([lev, fmt(s)])
        items.append(Item(desc.name, not bad, {"failures": bad}))
    return items


def tfae_items(descs: Sequence[lf.TowerDescriptor], prec=None) -> List[Item]:
    items = []
    for desc in descs:
        ext = lf.realize_tower(desc, prec)
        D = lf.realize_ramdatum(ext)
        br = rm.breaks(D)
        bad = []
        for s in [Fraction(0)] + [Fraction(k, D.e * D.e_base) for k in range(1, int((br.u + 1) * D.e * D.e_base) + 1)]:
            flags = rm.check_tfae_combinatorial(D, s)
            fieldwise = lf.check_tfae_field(ext, s)
            if not flags.consistent() or fieldwise != flags.shift_is_conductor:
                bad.append([fmt(s), list(flags.as_tuple()), fieldwise])
        items.append(Item(desc.name, not bad, {"mismatches": bad}))
    return items


def suite_tfae(ctx: Context) -> List[Item]:
    return tfae_items(_towers(ctx, lf.hh_catalog()), ctx.prec)


def suite_adapted_extension(ctx: Context) -> List[Item]:
    res = rm.find_adapted_extension(lf.adapted_catalog(3, 2), 3, Fraction(1, 2), ctx.prec)
    ok = res.e % 3 == 0 and res.breaks.u < Fraction(1, 2) and res.compositum_ok
    return [Item("F9:n=3,eps=1/2", ok, res.to_json())]


# -- toral characters -------------------------------------------------------------------

def toral_pairs() -> List[Tuple[str, lf.TowerDescriptor, lf.TowerDescriptor, Tuple[int, ...], Fraction]]:
    T, A = lf.TowerDescriptor, lf.artin_schreier
    F9 = get_field(3, 2)
    i9 = F9.pow(F9.generator(), 2)
    return [
        ("F3 < tame2, r=1", T(3, 1, ()), T(3, 1, (lf.tame(2),)), (1, 2), Fraction(1)),
        ("F3 < unram2, r=1", T(3, 1, ()), T(3, 1, (lf.unramified(2),)), (1,), Fraction(1)),
        ("F3 < as1, r=2", T(3, 1, ()), T(3, 1, (A(1),)), (1, 1), Fraction(2)),
        ("tame2 < tame2/as1, r=1", T(3, 1, (lf.tame(2),)), T(3, 1, (lf.tame(2), A(1))), (2,), Fraction(1)),
        ("F5 < as1, r=2", T(5, 1, ()), T(5, 1, (A(1),)), (1, 3), Fraction(2)),
        ("F9 tame4 < tame4/as1+as1(i), r=1/2", T(3, 2, (lf.tame(4),)),
         T(3, 2, (lf.tame(4), A(1), A(1, coeff=i9, level=1))), (1,), Fraction(1, 2)),
    ]


def suite_toral_norm(ctx: Context) -> List[Item]:
    items = []
    for name, small, big, coeffs, r in toral_pairs():
        res = dl.norm_compatibility(small, big, coeffs, r)
        items.append(Item(name, res.holds, {"rows": [[i, b, fmt(a), fmt(c)] for i, b, a, c in res.rows]}))
    return items


# -- Deligne-Lusztig parameter sweeps ------------------------------------------------------

def dl_cases() -> List[Tuple[str, rdm.RootDatum, rdm.ApartmentPoint, Fraction]]:
    GL2, SL2 = rdm.RootDatum("GL", 2), rdm.RootDatum("SL", 2)
    return [
        ("GL2 vertex r=1", GL2, rdm.ApartmentPoint.origin(GL2), Fraction(1)),
        ("GL2 barycenter r=1/2", GL2, rdm.ApartmentPoint.barycenter(GL2), Fraction(1, 2)),
        ("SL2 vertex r=1", SL2, rdm.ApartmentPoint.origin(SL2), Fraction(1)),
        ("SL2 barycenter r=1/2", SL2, rdm.ApartmentPoint.barycenter(SL2), Fraction(1, 2)),
    ]


def alpha_choices(r: Fraction) -> List[dl.AlphaChoice]:
    """Two adapted choices over F_3((t)): the plain tame one and a wildly ramified one."""
    T, A = lf.TowerDescriptor, lf.artin_schreier
    F = get_field(3)
    plain = dl.default_alpha_choice(F, r)
    if r == 1:
        wild = T(3, 1, (lf.tame(2), A(1)), 0, "tame2/as1")

        def alpha(ext):
            return ext.t().scale(2) * (ext.one() + ext.generator(2).inverse())
    elif r == Fraction(1, 2):
        F9 = get_field(3, 2)
        i9 = F9.pow(F9.generator(), 2)
        wild = T(3, 1, (lf.unramified(2), lf.tame(4), A(1), A(1, coeff=i9, level=2)), 0, "unram2/tame4/as1+as1(i)")

        def alpha(ext):
            tau = dl.designated_root(ext, Fraction(1, 2))
            g = ext.field.generator()
            return tau * (ext.generator(3).inverse() + ext.one().scale(g))
    else:
        raise DomainError("wild choices are tabulated for r = 1 and r = 1/2")
    return [plain, dl.AlphaChoice(wild, alpha, wild.name)]


def weyl_invariance_items(length: int = 6) -> List[Item]:
    F = get_field(3)
    items = []
    for name, rd, x, r in dl_cases():
        ball = rdm.affine_weyl_ball(rd, length)
        bad = 0
        sw = dl.sweep(rd, x, r, F)
        for m in sw:
            base = dl.dl_parameter(m)
            for _, w in ball:
                if not dl.same_parameter(dl.dl_parameter(m.transported(w)), base):
                    bad += 1
        items.append(Item(name, bad == 0, {"instances": len(sw), "transports": len(ball), "failures": bad}))
    return items


def choice_invariance_items() -> List[Item]:
    F = get_field(3)
    items = []
    for name, rd, x, r in dl_cases():
        a, b = alpha_choices(r)
        bad = 0
        sw = dl.sweep(rd, x, r, F)
        for m in sw:
            d1, d2 = dl.dl_parameter(m, a), dl.dl_parameter(m, b)
            if not (dl.same_parameter(d1, d2) and dl.dl_equiv(d1, d2)):
                bad += 1
        items.append(Item(name, bad == 0, {"instances": len(sw), "choices": [a.describe(), b.describe()], "failures": bad}))
    return items


def suite_weyl_invariance(ctx: Context) -> List[Item]:
    return weyl_invariance_items()


def suite_choice_invariance(ctx: Context) -> List[Item]:
    return choice_invariance_items()


def nondegeneracy_items() -> List[Item]:
    F3, F9 = get_field(3), get_field(3, 2)
    items = []
    for name, rd, x, r in dl_cases():
        bad = []
        sw = dl.sweep(rd, x, r, F3)
        for m in sw:
            flag = dl.is_nondegenerate(m).flag
            for K in (F3, F9):
                if flag == dl.orbit_oracle_degenerate(m, K):
                    bad.append([list(m.X), K.q])
        items.append(Item(name, not bad, {"instances": len(sw), "mismatches": bad}))
    return items


def suite_nondegeneracy(ctx: Context) -> List[Item]:
    return nondegeneracy_items()


def association_items(seed: int = 0, transported: int = 40) -> List[Item]:
    """Pairs inside each sweep plus random Weyl-transported pairs."""
    F = get_field(3)
    rng = random.Random(seed)
    items = []
    for name, rd, x, r in dl_cases():
        sw = dl.sweep(rd, x, r, F)
        params = {m: dl.dl_parameter(m) for m in sw}
        stab = [w for _, w in rdm.affine_weyl_ball(rd, 6) if w.act_point(x) == x]
        orbits = dl.orbits_for(rd, x, F)
        hits = bad = 0
        for m1 in sw:
            moved = {dl._freeze(m1.transported(w).matrix()) for w in stab}
            for m2 in sw:
                target = orbits.orbit(m2.matrix())
                if moved & target:
                    hits += 1
                    if not dl.dl_equiv(params[m1], params[m2]):
                        bad += 1
        ball = rdm.affine_weyl_ball(rd, 6)
        extra = 0
        for _ in range(transported):
            m1 = rng.choice(sw)
            _, w = rng.choice(ball)
            m2 = m1.transported(w)
            if dl.associate_oracle(m1, m2, 6):
                extra += 1
                if not dl.stable_associate(m1, m2):
                    bad += 1
        items.append(Item(name, bad == 0, {"associate_pairs": hits, "transported_pairs": extra, "counterexamples": bad}))
    return items


def suite_stable_association(ctx: Context) -> List[Item]:
    return association_items(ctx.seed)


def suite_restricted_classes(ctx: Context) -> List[Item]:
    """Canonical forms separate exactly the equivalence classes on each sweep."""
    F = get_field(3)
    items = []
    for name, rd, x, r in dl_cases():
        ps = [dl.dl_parameter(m) for m in dl.sweep(rd, x, r, F) if dl.is_nondegenerate(m).flag]
        bad = 0
        for a in ps:
            for b in ps:
                if dl.dl_equiv(a, b) != dl.same_parameter(a, b):
                    bad += 1
        classes = len({p.key() for p in ps})
        items.append(Item(name, bad == 0, {"nondegenerate": len(ps), "classes": classes, "failures": bad}))
    return items


# -- class field theory and depth zero ------------------------------------------------------

def suite_unit_quotient(ctx: Context) -> List[Item]:
    items = []
    for p in (2, 3, 5, 7):
        rep = cft.counterexample_report(p)
        want_d = 3 if p == 2 else 2
        ok = list(rep["quotient_invariants"]) == [p, p] and rep["d"] == want_d and rep["gamma_d_cyclic"] \
            and rep["gamma_d_order"] == p
        items.append(Item(f"p={p}", ok, rep))
    return items


def suite_depth_zero(ctx: Context) -> List[Item]:
    """Smith-form enumeration against a direct scan of all points with bounded denominators.

    The scan bound q^k - 1 with k the exponent of the Weyl group is complete;
    the comparison is run where that scan stays small.
    """
    items = []
    for rd in (rdm.RootDatum("SL", 2), rdm.RootDatum("GL", 1), rdm.RootDatum("GL", 2)):
        for q in (2, 3, 4, 5):
            exact = [d.canonical for d in dl.depth_zero_space(rd, q)]
            brute = [d.canonical for d in dl.depth_zero_space(rd, q, denominator_bound=q ** rd.weyl_exponent() - 1)]
            items.append(Item(f"{rd} q={q}", exact == brute, {"classes": [[fmt(a) for a in v] for v in exact]}))
    return items


def suite_depth_zero_pushforward(ctx: Context) -> List[Item]:
    GL2, SL2 = rdm.RootDatum("GL", 2), rdm.RootDatum("SL", 2)
    items = []
    d = dl.depth_zero_pushforward(SL2, rdm.ApartmentPoint.origin(SL2), [["1/4"], ["3/4"]])
    items.append(Item("SL2 vertex", d.canonical == (Fraction(1, 4),), d.to_json()))
    d = dl.depth_zero_pushforward(GL2, rdm.ApartmentPoint(GL2, [0, "1/2"]), [["1/4", "3/4"]])
    items.append(Item("GL2 torus point", len(d.orbit) == 2, d.to_json()))
    d = dl.depth_zero_pushforward(SL2, rdm.ApartmentPoint.barycenter(SL2), [[0]])
    items.append(Item("zero", d.canonical == (Fraction(0),), d.to_json()))
    return items


def suite_associate_invariance(ctx: Context) -> List[Item]:
    """Associate depth-zero data (related by an affine Weyl element) push forward to the same orbit."""
    items = []
    for rd in (rdm.RootDatum("GL", 2), rdm.RootDatum("SL", 2)):
        x = rdm.ApartmentPoint.barycenter(rd)
        rq = rdm.reductive_quotient(rd, x)
        bad = 0
        count = 0
        for pt in rdm.frobenius_solutions(rd, 3):
            theta = rdm.DualTorsionPoint.make(rd, pt)
            base = dl.depth_zero_pushforward(rd, x, theta.orbit(rq.weyl))
            for _, w in rdm.affine_weyl_ball(rd, 4):
                y = w.act_point(x)
                moved = theta.act(w.perm)
                rq_y = rdm.reductive_quotient(rd, y)
                other = dl.depth_zero_pushforward(rd, y, moved.orbit(rq_y.weyl))
                count += 1
                bad += other.canonical != base.canonical
        items.append(Item(str(rd), bad == 0, {"pairs": count, "failures": bad}))
    return items


SUITES: Dict[str, Tuple[Callable[[Context], List[Item]], str]] = {
    "numbering": (suite_numbering, "lower groups are subgroups and upper numbering passes to quotients"),
    "hasse-herbrand": (suite_hasse_herbrand, "phi/psi inverse, composition along levels, c additivity"),
    "conductor-shift": (suite_conductor_shift, "trace shifts levels by c beyond the last lower break"),
    "c-equals-u-minus-ell": (suite_breaks, "conductor shift equals last upper minus last lower break"),
    "norm-range": (suite_norm_range, "graded norm surjectivity and Nm(1+x) = 1+Tr(x)"),
    "inertia-intersections": (suite_inertia_intersections, "upper groups intersected with inertia of a subfield"),
    "tfae": (suite_tfae, "equivalent conditions, combinatorial and via norms"),
    "adapted-extension": (suite_adapted_extension, "search for L/E with n | e and small u, stable under tame compositum"),
    "toral-norm": (suite_toral_norm, "toral characters compose with norms"),
    "weyl-invariance": (suite_weyl_invariance, "parameters invariant under affine Weyl transport"),
    "choice-invariance": (suite_choice_invariance, "parameters independent of the adapted scalar"),
    "nondegeneracy": (suite_nondegeneracy, "invariant test agrees with the orbit-closure oracle"),
    "stable-association": (suite_stable_association, "associate types have equal parameters"),
    "restricted-classes": (suite_restricted_classes, "canonical forms represent the equivalence classes"),
    "unit-quotient-counterexample": (suite_unit_quotient, "unit quotient with two cyclic factors and a cyclic last group"),
    "depth-zero-space": (suite_depth_zero, "Frobenius-stable Weyl orbits of dual torsion points"),
    "depth-zero-pushforward": (suite_depth_zero_pushforward, "orbit pushforward from a point to the full Weyl group"),
    "associate-invariance": (suite_associate_invariance, "associate depth-zero data give equal orbits"),
}


def run_suite(name: str, ctx: Optional[Context] = None) -> dict:
    ctx = ctx or Context()
    if name not in SUITES:
        raise DomainError(f"unknown suite {name!r}; available: {sorted(SUITES)}")
    fn, summary = SUITES[name]
    items = sorted(fn(ctx), key=lambda it: it.name)
    return {
        "suite": name,
        "summary": summary,
        "seed": ctx.seed,
        "ok": all(it.ok for it in items),
        "items": [it.to_json() for it in items],
    }
