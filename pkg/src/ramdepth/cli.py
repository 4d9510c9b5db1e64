"""Command-line front door: JSON in, JSON out.

Exit codes: 0 when every asserted invariant holds, 1 on an invariant or
suite failure (the failing check is named on stderr and in the report),
2 on usage errors and out-of-domain input, malformed JSON included.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional

from . import cft
from . import dlparams as dl
from . import localfield as lf
from . import ramification as rm
from . import rootdata as rdm
from . import suites
from .errors import DomainError, InvariantError, NotFoundError, PrecisionError
from .finitefield import get_field
from .plfun import PLFun
from .rationals import fmt, is_prime, rat

BUILTIN_DATA = {"trivial": rm.trivial_datum}
TOWER_SUITES = ("numbering", "hasse-herbrand", "conductor-shift", "c-equals-u-minus-ell",
                "inertia-intersections", "tfae")


class UsageError(Exception):
    pass


# -- input helpers ------------------------------------------------------------------

def _load_json(text: str, what: str) -> Any:
    """Inline JSON, or the contents of a file holding JSON."""
    src = text
    if not text.lstrip().startswith(("{", "[")):
        try:
            src = Path(text).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read {what} from {text!r}: {exc}")
    try:
        return json.loads(src)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON for {what}: {exc}")


def _datum(source: str) -> rm.RamDatum:
    stem = Path(source).stem
    if source in BUILTIN_DATA or (stem in BUILTIN_DATA and not Path(source).exists()):
        return BUILTIN_DATA[source if source in BUILTIN_DATA else stem]()
    d = _load_json(source, "datum")
    if not isinstance(d, dict):
        raise UsageError("a datum must be a JSON object")
    return rm.RamDatum.from_json(d)


def _field(text: str):
    try:
        q = int(text)
    except ValueError:
        raise UsageError(f"--field must be a prime power, got {text!r}")
    for p in range(2, q + 1):
        if q % p == 0:
            k, m = 0, q
            while m % p == 0:
                m //= p
                k += 1
            if m != 1 or not is_prime(p):
                break
            return get_field(p, k)
    raise UsageError(f"--field must be a prime power, got {text!r}")


def _coeffs(text: str, F) -> List[int]:
    """A JSON list of field elements: integers (encodings) or prime-field coefficient arrays."""
    raw = _load_json(text, "X") if isinstance(text, str) else text
    if not isinstance(raw, list):
        raise UsageError("X must be a JSON list")
    out = []
    for a in raw:
        if isinstance(a, list):
            if len(a) > F.k or any(not isinstance(c, int) for c in a):
                raise UsageError(f"coefficient array {a} does not describe an element of GF({F.q})")
            out.append(F.from_vec([c % F.p for c in a] + [0] * (F.k - len(a))))
        elif isinstance(a, int) and 0 <= a < F.q:
            out.append(a)
        else:
            raise UsageError(f"bad field element {a!r} for GF({F.q})")
    return out


def _point(rd: rdm.RootDatum, text: str) -> rdm.ApartmentPoint:
    t = text.strip()
    if t in ("origin", "vertex"):
        return rdm.ApartmentPoint.origin(rd)
    if t == "barycenter":
        return rdm.ApartmentPoint.barycenter(rd)
    vals = _load_json(t, "x") if t.startswith("[") else [s for s in t.split(",") if s.strip()]
    if not isinstance(vals, list):
        vals = [vals]
    return rdm.ApartmentPoint(rd, [rat(v) for v in vals])


# -- subcommands -----------------------------------------------------------------------

def _hh_report(D: rm.RamDatum) -> dict:
    phi, psi = rm.hh_phi(D), rm.hh_psi(D)
    br = rm.breaks(D)
    checks = {
        "psi_inverts_phi": phi.compose(psi) == PLFun.identity() and psi.compose(phi) == PLFun.identity(),
        "c_equals_u_minus_ell": br.c == br.u - br.ell,
    }
    return {"datum": D.to_json(), "phi": phi.to_json(), "psi": psi.to_json(), "breaks": br.to_json(),
            "checks": checks, "ok": all(checks.values())}


def _datum_from_args(args) -> rm.RamDatum:
    if args.tower:
        return lf.realize_ramdatum(lf.realize_tower(suites.resolve_tower(args.tower), args.prec))
    if args.datum:
        return _datum(args.datum)
    raise UsageError("give --datum or --tower")


def cmd_hh(args) -> dict:
    return _hh_report(_datum_from_args(args))


def cmd_tower(args) -> dict:
    if not args.tower:
        raise UsageError("give --tower")
    desc = suites.resolve_tower(args.tower)
    ext = lf.realize_tower(desc, args.prec)
    out = _hh_report(lf.realize_ramdatum(ext))
    out["tower"] = desc.to_json()
    out["degree"], out["e"], out["galois"] = ext.degree, ext.e, ext.is_galois
    ctx = suites.Context(args.seed, args.prec, desc)
    reports = {name: suites.run_suite(name, ctx) for name in (args.suite or TOWER_SUITES)}
    out["suites"] = {k: {"ok": v["ok"], "items": v["items"]} for k, v in reports.items()}
    failing = sorted(k for k, v in reports.items() if not v["ok"])
    out["failing"] = failing
    out["ok"] = out["ok"] and not failing
    return out


def cmd_cft(args) -> dict:
    if args.action == "counterexample":
        rep = cft.counterexample_report(args.p, args.N)
        ok = (len(rep["quotient_invariants"]) == 2 and all(a == args.p for a in rep["quotient_invariants"])
              and rep["gamma_d_cyclic"])
        rep["checks"] = {"two_cyclic_factors_of_order_p_with_cyclic_last_group": ok}
        rep["ok"] = ok
        return rep
    S = cft.ExponentSet.parse(args.S) if args.S else cft.counterexample_set(args.p)
    N = args.N or S.bound() + 4
    uq = cft.unit_quotient(args.p, S, N)
    ar = cft.upper_filtration(uq)
    return {"p": args.p, "S": str(S), "N": N, "quotient": uq.to_json(), "filtration": ar.to_json(),
            "breaks": rm.breaks(ar.to_ramdatum()).to_json(), "ok": True}


def cmd_dlparam(args) -> dict:
    if args.group is None or args.x is None or args.r is None or args.X is None:
        raise UsageError("dlparam needs --group, --x, --r and --X")
    rd = rdm.RootDatum.parse(args.group)
    F = _field(args.field)
    mt = dl.MPType(rd, _point(rd, args.x), rat(args.r), _coeffs(args.X, F), F)
    choice = None
    if args.tower:
        desc = suites.resolve_tower(args.tower)
        choice = dl.AlphaChoice(desc, None, desc.name or "tower")
    d = dl.dl_parameter(mt, choice)
    nd = dl.is_nondegenerate(mt, choice)
    return {
        "type": mt.to_json(),
        "nondegenerate": nd.flag,
        "guaranteed": nd.guaranteed,
        "note": nd.note,
        "witness": nd.witness,
        "Z": d.to_json()["Z"],
        "class": d.class_string(),
        "param": d.to_json(),
        "ok": True,
    }


def cmd_depth0(args) -> dict:
    if args.group is None or args.q is None:
        raise UsageError("depth0 needs --group and --q")
    rd = rdm.RootDatum.parse(args.group)
    params = dl.depth_zero_space(rd, args.q, None, args.bound)
    out = {"group": rd.to_json(), "q": args.q, "orbits": [p.to_json() for p in params],
           "count": len(params), "ok": True}
    if args.bound is not None:
        out["denominator_bound"] = args.bound
    else:
        brute = rd.weyl_exponent() <= 2
        if brute:
            bound = args.q ** rd.weyl_exponent() - 1
            scan = dl.depth_zero_space(rd, args.q, None, bound)
            same = [p.canonical for p in scan] == [p.canonical for p in params]
            out["cross_check"] = {"denominator_bound": bound, "agrees": same}
            out["ok"] = same
    return out


def cmd_verify(args) -> dict:
    names = sorted(suites.SUITES) if args.suite in (None, "all") else [args.suite]
    ctx = suites.Context(args.seed, args.prec, suites.resolve_tower(args.tower) if args.tower else None)
    reports = [suites.run_suite(n, ctx) for n in names]
    failing = [r["suite"] for r in reports if not r["ok"]]
    if len(reports) == 1:
        out = dict(reports[0])
    else:
        out = {"suites": reports}
    out["failing"] = failing
    out["ok"] = not failing
    return out


def cmd_plot_data(args) -> dict:
    D = _datum_from_args(args)
    fn = rm.hh_phi(D) if args.function == "phi" else rm.hh_psi(D)
    return {"function": args.function, "segments": fn.segments(), "ok": True}


# -- driver ----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="JSON object (inline or a file) supplying option values")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized sweeps (recorded in the report)")
    common.add_argument("--prec", type=int, default=None, help="working precision in uniformizer units")
    common.add_argument("--json-out", help="also write the report to this file")

    ap = argparse.ArgumentParser(prog="ramdepth", description="Ramification calculus and depth-r parameters.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hh", parents=[common], help="phi, psi and breaks of a datum or tower")
    p.add_argument("--datum", help="datum JSON (inline or file) or a builtin name such as 'trivial'")
    p.add_argument("--tower", help="catalog name, alias or descriptor JSON")
    p.set_defaults(fn=cmd_hh)

    p = sub.add_parser("tower", parents=[common], help="realize a tower and run the ramification checks on it")
    p.add_argument("--tower")
    p.add_argument("--suite", action="append", choices=TOWER_SUITES, help="restrict to these suites")
    p.set_defaults(fn=cmd_tower)

    p = sub.add_parser("cft", parents=[common], help="unit quotients and the counterexample report")
    p.add_argument("action", choices=["counterexample", "quotient"])
    p.add_argument("--p", type=int, default=3)
    p.add_argument("--N", type=int, default=None, help="truncation level")
    p.add_argument("--S", default=None, help="exponent set such as '3..' or '2,4..'")
    p.set_defaults(fn=cmd_cft)

    p = sub.add_parser("dlparam", parents=[common], help="depth-r Deligne-Lusztig parameter of a Moy-Prasad type")
    p.add_argument("--group")
    p.add_argument("--x", help="point: origin, barycenter, or coordinates like '1/4' or '[1/2,0]'")
    p.add_argument("--r")
    p.add_argument("--X", help="JSON list of field elements")
    p.add_argument("--field", default="3", help="residue field size q")
    p.add_argument("--tower", help="adapted tower carrying alpha (default: smallest tame one)")
    p.set_defaults(fn=cmd_dlparam)

    p = sub.add_parser("depth0", parents=[common], help="depth-zero parameters of a split group")
    p.add_argument("--group")
    p.add_argument("--q", type=int)
    p.add_argument("--bound", type=int, default=None, help="scan all points with denominators up to this bound")
    p.set_defaults(fn=cmd_depth0)

    p = sub.add_parser("verify", parents=[common], help="run a named verification suite, or all of them")
    p.add_argument("--suite", default="all", help=f"one of {sorted(suites.SUITES)} or 'all'")
    p.add_argument("--tower", help="run tower suites on this tower only")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("plot-data", parents=[common], help="breakpoint table of phi or psi")
    p.add_argument("--datum")
    p.add_argument("--tower")
    p.add_argument("--function", choices=["phi", "psi"], default="phi")
    p.set_defaults(fn=cmd_plot_data)
    return ap


def _apply_input(args, parser_defaults: Dict[str, Any]) -> None:
    """Options from --input fill every option left at its default."""
    if not args.input:
        return
    cfg = _load_json(args.input, "--input")
    if not isinstance(cfg, dict):
        raise UsageError("--input must hold a JSON object")
    for key, val in cfg.items():
        attr = key.replace("-", "_")
        if attr in ("command", "fn", "input") or not hasattr(args, attr):
            raise UsageError(f"unknown option {key!r} in --input")
        if getattr(args, attr) == parser_defaults.get(attr):
            if isinstance(val, (dict, list)):
                val = json.dumps(val)
            setattr(args, attr, val)


def _emit(report: dict, path: Optional[str]) -> None:
    text = json.dumps(report, sort_keys=True, indent=2, default=_json_default)
    print(text)
    if path:
        Path(path).write_text(text + "\n")


def _json_default(obj):
    if isinstance(obj, Fraction):
        return fmt(obj)
    raise TypeError(f"not serializable: {type(obj).__name__}")


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    sub_defaults = {a.dest: a.default for a in parser._subparsers._group_actions[0].choices[args.command]._actions}
    try:
        _apply_input(args, sub_defaults)
        if args.prec is not None:
            if args.prec < 1:
                raise UsageError("--prec must be positive")
            os.environ["RAMDEPTH_PREC"] = str(args.prec)
        report = args.fn(args)
    except (UsageError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InvariantError, PrecisionError, NotFoundError) as exc:
        print(f"invariant failure: {exc}", file=sys.stderr)
        _emit({"command": args.command, "seed": args.seed, "ok": False, "error": str(exc)}, args.json_out)
        return 1
    report = {"command": args.command, "seed": args.seed, **report}
    _emit(report, args.json_out)
    if not report.get("ok", True):
        failing = report.get("failing") or [k for k, v in report.get("checks", {}).items() if not v]
        print(f"invariant failure: {', '.join(failing) or args.command}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
