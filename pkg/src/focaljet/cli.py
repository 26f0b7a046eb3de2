"""Command line front end.

Every verb reads JSON files, runs one library operation and writes a JSON
report (sorted keys) that always carries ``order``.  Exit status is 0 for an
affirmative verdict, 1 for a negative one and 2 for bad input; input errors
are reported as ``{"error": {"code": ..., "message": ...}}``.

The working order comes from ``--order``, else ``FOCALJET_ORDER``.  When
neither is set, inputs keep the order they declare and constructions use 6.
Input jets of higher order are truncated exactly to the working order.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional

from . import serialize as S
from .affine import (AffineError, HypothesisError, affine_admissible, concrete_example,
                     label_equivalent, lift_report, liftable_pair_example,
                     permutation_example, synthesize_equivalent)
from .germ import GermError
from .jet import JetError
from .label import (LabelError, generate, is_valid, to_ff_label, validate, z2_action,
                    zm_reindex, zr_shift)
from .polygon import (PolygonError, classify_corner, rep_affine_equivalent, rep_orbit_equal,
                      validate_ingredient)

DEFAULT_ORDER = 6

# machine-readable error codes
E_JSON = "malformed_json"
E_SCHEMA = "schema_violation"
E_HYPOTHESIS = "hypothesis_failure"
E_PRECONDITION = "precondition_failure"
E_IO = "io_error"


class InputError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


def _order(args) -> Optional[int]:
    if args.order is not None:
        n = args.order
    elif os.environ.get("FOCALJET_ORDER"):
        try:
            n = int(os.environ["FOCALJET_ORDER"])
        except ValueError:
            raise InputError(E_SCHEMA, "FOCALJET_ORDER must be an integer") from None
    else:
        return None
    if n < 1:
        raise InputError(E_SCHEMA, "order must be at least 1")
    return n


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(E_IO, f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(E_JSON, f"{path}: {exc}") from None


def _pair(s: str):
    try:
        a, b = s.split(",")
        return (int(a), int(b))
    except ValueError:
        raise InputError(E_SCHEMA, f"expected two integers 'a,b', got {s!r}") from None


def _ints(s: str) -> List[int]:
    try:
        return [int(x) for x in s.split(",")]
    except ValueError:
        raise InputError(E_SCHEMA, f"expected comma separated integers, got {s!r}") from None


def _label(path, n):
    return S.label_from_json(_load(path), n)


def _map(path, n):
    return S.map_from_json(_load(path), n)


def _maps(path, n):
    data = _load(path)
    if not isinstance(data, list):
        raise InputError(E_SCHEMA, f"{path}: expected a JSON list of map jets")
    return [S.map_from_json(d, n) for d in data]


def _echo(n, *objs):
    if n is not None:
        return n
    for o in objs:
        if o is not None:
            return o.order
    return DEFAULT_ORDER


# --- verbs ---------------------------------------------------------------------------

def cmd_validate_label(args, n):
    l = _label(args.l, n)
    bad = validate(l)
    return {"order": l.order, "verdict": not bad, "violations": bad}, not bad


def cmd_generate_label(args, n):
    data = _load(args.input)
    if not isinstance(data, dict):
        raise InputError(E_SCHEMA, "generator input must be an object")
    try:
        m = int(data["m"])
        seed = S.jet_from_json(data["seed"], n)
        chain = [S.jet_from_json(c, seed.order) for c in data.get("chain", [])]
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, S.SchemaError):
            raise
        raise InputError(E_SCHEMA, f"generator input: {exc}") from None
    l = generate(m, chain, seed, seed.order, complete=not data.get("ff", False))
    return {"order": l.order, "verdict": True, "label": S.label_to_json(l)}, True


def cmd_act(args, n):
    l = _label(args.l, n)
    if args.action == "z2":
        out = z2_action(l, args.k)
    elif args.action == "zm":
        if args.sigma is None:
            raise InputError(E_SCHEMA, "--sigma is required for the Z_m action")
        out = zm_reindex(l, _ints(args.sigma))
    elif args.action == "zr":
        out = zr_shift(l, args.k, args.b)
    else:
        out = to_ff_label(l)
    ok = is_valid(out)
    return {"order": out.order, "verdict": ok, "label": S.label_to_json(out)}, ok


def cmd_mu(args, n):
    G = _map(args.g, n)
    return {"order": G.order, "verdict": True, "mu": S.mu_to_json(G.mu())}, True


def cmd_lift(args, n):
    G = _map(args.g, n)
    mu = S.mu_from_json(args.mu) if args.mu is not None else None
    rep = lift_report(G, mu)
    out = S.lift_to_json(rep)
    out["verdict"] = rep.liftable
    return out, rep.liftable


def cmd_admissible(args, n):
    t, tp = _maps(args.t, n), _maps(args.tp, n)
    if not t or len(t) != len(tp):
        raise InputError(E_SCHEMA, "tuples must be non-empty and of equal length")
    mu = S.mu_from_json(args.mu) if args.mu is not None else None
    a = affine_admissible(t, tp, mu, None, args.experimental)
    return S.admissibility_to_json(a), a.verdict


def cmd_equivalent(args, n):
    l, lp = _label(args.l, n), _label(args.lp, n)
    G = S.vplus_from_json(_load(args.g), n)
    cert = label_equivalent(l, lp, G, n, rotations=not args.no_rotations,
                            experimental=args.experimental)
    return ({"order": cert.order, "verdict": cert.verdict,
             "certificate": S.certificate_to_json(cert)}, cert.verdict)


def cmd_synthesize(args, n):
    l = _label(args.l, n)
    targets = [S.vplus_from_json(d, n) for d in _load_list(args.targets)]
    G = S.vplus_from_json(_load(args.g), n)
    out = synthesize_equivalent(l, targets, G, n)
    return {"order": out.order, "verdict": True, "label": S.label_to_json(out)}, True


def _load_list(path):
    data = _load(path)
    if not isinstance(data, list):
        raise InputError(E_SCHEMA, f"{path}: expected a JSON list")
    return data


def cmd_classify_corner(args, n):
    cats = classify_corner(_pair(args.xi1), _pair(args.xi2), args.s)
    return {"order": _echo(n), "verdict": bool(cats), "categories": cats}, bool(cats)


def cmd_validate_rep(args, n):
    rep = S.rep_from_json(_load(args.rep), n)
    bad = validate_ingredient(rep)
    order = rep.labels[0].order if rep.labels else _echo(n)
    return {"order": order, "verdict": not bad, "violations": bad}, not bad


def cmd_orbit_equal(args, n):
    a, b = S.rep_from_json(_load(args.rep), n), S.rep_from_json(_load(args.rep2), n)
    w = rep_orbit_equal(a, b)
    order = a.labels[0].order if a.labels else _echo(n)
    wit = None if w is None else {"k": w[0], "b": S.rat_str(w[1])}
    return {"order": order, "verdict": w is not None, "witness": wit}, w is not None


def cmd_rep_equivalent(args, n):
    a, b = S.rep_from_json(_load(args.rep), n), S.rep_from_json(_load(args.rep2), n)
    data = _load(args.g)
    if isinstance(data, list):
        G = [S.vplus_from_json(d, n) for d in data]
    else:
        G = S.vplus_from_json(data, n)
    ok, certs = rep_affine_equivalent(a, b, G, n)
    order = a.labels[0].order if a.labels else _echo(n)
    return ({"order": order, "verdict": ok,
             "certificates": [S.certificate_to_json(c) for c in certs]}, ok)


def cmd_example(args, n):
    N = _echo(n)
    if args.kind == "permutation":
        sigma = _ints(args.sigma) if args.sigma else None
        l, lp, G = permutation_example(args.m, sigma, N=N)
    elif args.kind == "concrete":
        if args.a is None or args.b is None:
            raise InputError(E_SCHEMA, "--a and --b are required")
        l, lp, G = concrete_example(S.gauss_from_json(args.a), S.gauss_from_json(args.b), N)
    else:
        if args.g0 is None or args.g1 is None:
            raise InputError(E_SCHEMA, "--g0 and --g1 are required")
        l, lp, G = liftable_pair_example(S.vplus_from_json(_load(args.g0), n),
                                         S.vplus_from_json(_load(args.g1), n))
    return ({"order": l.order, "verdict": True, "l": S.label_to_json(l),
             "lp": S.label_to_json(lp), "G": S.map_to_json(G)}, True)


VERBS = {
    "validate-label": cmd_validate_label, "generate-label": cmd_generate_label,
    "act": cmd_act, "mu": cmd_mu, "lift": cmd_lift, "admissible": cmd_admissible,
    "equivalent": cmd_equivalent, "synthesize": cmd_synthesize,
    "classify-corner": cmd_classify_corner, "validate-rep": cmd_validate_rep,
    "orbit-equal": cmd_orbit_equal, "rep-equivalent": cmd_rep_equivalent,
    "example": cmd_example,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", type=int, help="jet order N (default: FOCALJET_ORDER or 6)")
    common.add_argument("--output", "-o", help="write the report here instead of stdout")

    p = argparse.ArgumentParser(prog="focaljet", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, help_):
        return sub.add_parser(name, parents=[common], help=help_)

    v = verb("validate-label", "check the label relations")
    v.add_argument("--l", required=True)
    v = verb("generate-label", "build a label from {m, chain, seed}")
    v.add_argument("--input", required=True)
    v = verb("act", "apply a group action to a label")
    v.add_argument("--l", required=True)
    v.add_argument("--action", choices=["z2", "zm", "zr", "ff"], required=True)
    v.add_argument("--k", type=int, default=0)
    v.add_argument("--b", default="0")
    v.add_argument("--sigma", help="permutation as comma separated indices")
    v = verb("mu", "first-order invariant of a jet")
    v.add_argument("--g", required=True)
    v = verb("lift", "liftability report")
    v.add_argument("--g", required=True)
    v.add_argument("--mu")
    v = verb("admissible", "affine admissibility of two tuples")
    v.add_argument("--t", required=True)
    v.add_argument("--tp", required=True)
    v.add_argument("--mu")
    v.add_argument("--experimental", action="store_true")
    v = verb("equivalent", "certify affine equivalence of two labels")
    v.add_argument("--l", required=True)
    v.add_argument("--lp", required=True)
    v.add_argument("--g", required=True)
    v.add_argument("--no-rotations", action="store_true")
    v.add_argument("--experimental", action="store_true")
    v = verb("synthesize", "build an affine equivalent label for target jets")
    v.add_argument("--l", required=True)
    v.add_argument("--targets", required=True)
    v.add_argument("--g", required=True)
    v = verb("classify-corner", "corner categories of (xi1, xi2, s)")
    v.add_argument("--xi1", required=True)
    v.add_argument("--xi2", required=True)
    v.add_argument("--s", type=int, default=0)
    v = verb("validate-rep", "check an ingredient representative")
    v.add_argument("--rep", required=True)
    v = verb("orbit-equal", "Z x R witness between two representatives")
    v.add_argument("--rep", required=True)
    v.add_argument("--rep2", required=True)
    v = verb("rep-equivalent", "affine equivalence of two representatives")
    v.add_argument("--rep", required=True)
    v.add_argument("--rep2", required=True)
    v.add_argument("--g", required=True)
    v = verb("example", "emit a constructed pair of labels")
    v.add_argument("--kind", choices=["permutation", "liftable", "concrete"], required=True)
    v.add_argument("--m", type=int, default=3)
    v.add_argument("--sigma")
    v.add_argument("--a")
    v.add_argument("--b")
    v.add_argument("--g0")
    v.add_argument("--g1")
    return p


def run(argv: Optional[List[str]] = None):
    """``(exit status, report)`` without touching stdout."""
    args = build_parser().parse_args(argv)
    try:
        n = _order(args)
        report, ok = VERBS[args.verb](args, n)
        return (0 if ok else 1), report, args
    except InputError as exc:
        code, msg = exc.code, str(exc)
    except HypothesisError as exc:
        code, msg = E_HYPOTHESIS, str(exc)
    except (AffineError, GermError) as exc:
        code, msg = E_PRECONDITION, str(exc)
    except S.SchemaError as exc:
        code, msg = E_SCHEMA, str(exc)
    except (LabelError, JetError, PolygonError, ValueError, ZeroDivisionError) as exc:
        code, msg = E_SCHEMA, str(exc)
    try:
        order = _order(args)
    except InputError:
        order = None
    return 2, {"order": _echo(order), "error": {"code": code, "message": msg}}, args


def main(argv: Optional[List[str]] = None) -> int:
    status, report, args = run(argv)
    text = S.dumps(report) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
