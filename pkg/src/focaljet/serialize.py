"""Canonical JSON forms of every exact object.

Scalars are strings so no float ever enters: rationals ``"n/d"``, Gaussian
rationals ``"n/d+n/d i"`` and pi-polynomials ``[{"pi": k, "re": .., "im": ..}]``.
Jets may also be given as ``{"order": N, "basis": "XY", "expr": "Y + X*Y"}``,
parsed exactly with sympy (``pi`` and ``I`` are understood; use ``Zb`` for
``Zbar``).
"""

from __future__ import annotations

import json
import re
from typing import Any, Dict

import sympy

from .affine import Admissibility, EquivalenceCertificate, LiftReport
from .coeffring import GaussRational, PiGaussCoeff, rat, rat_str
from .germ import LogLaurentGerm, SingularPart
from .jet import Mu, PlaneJet, SmoothJet, VPlusJet
from .label import CompleteFFLabel, FFLabel
from .polygon import IngredientRep, MarkedPoint, Polygon


class SchemaError(ValueError):
    pass


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


# --- scalars -------------------------------------------------------------------

def gauss_to_json(g) -> str:
    return str(GaussRational.coerce(g))


def gauss_from_json(s) -> GaussRational:
    try:
        return GaussRational.parse(str(s))
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


def coeff_to_json(c):
    return PiGaussCoeff.coerce(c).to_json()


def coeff_from_json(data) -> PiGaussCoeff:
    try:
        return PiGaussCoeff.from_json(data)
    except (ValueError, TypeError, AttributeError) as exc:
        raise SchemaError(f"bad coefficient {data!r}: {exc}") from None


def mu_to_json(mu: Mu) -> str:
    return gauss_to_json(mu.value)


def mu_from_json(s) -> Mu:
    try:
        return Mu(gauss_from_json(s))
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


# --- jets ----------------------------------------------------------------------

def basis_to_json(basis) -> str:
    if isinstance(basis, Mu):
        return f"Zmu({mu_to_json(basis)})"
    return basis


def basis_from_json(s):
    if s in ("XY", "Z"):
        return s
    m = re.fullmatch(r"Zmu\((.*)\)", str(s))
    if m:
        return mu_from_json(m.group(1))
    raise SchemaError(f"unknown basis {s!r}")


def _terms_to_json(raw) -> list:
    by: Dict = {}
    for (p, q, k), v in raw.items():
        by.setdefault((p, q), {})[k] = v
    return [{"p": p, "q": q, "coeff": PiGaussCoeff._from_raw(t).to_json()}
            for (p, q), t in sorted(by.items())]


def _terms_from_json(terms) -> Dict:
    out: Dict = {}
    if not isinstance(terms, list):
        raise SchemaError("terms must be a list")
    for t in terms:
        try:
            p, q = int(t["p"]), int(t["q"])
        except (KeyError, TypeError, ValueError):
            raise SchemaError(f"bad term {t!r}") from None
        c = coeff_from_json(t.get("coeff", []))
        if (p, q) in out:
            raise SchemaError(f"duplicate term ({p},{q})")
        out[(p, q)] = c
    return out


def jet_to_json(f: SmoothJet) -> dict:
    return {"order": f.order, "basis": basis_to_json(f.basis), "terms": _terms_to_json(f.raw)}


_SYMS = {"X": sympy.Symbol("X"), "Y": sympy.Symbol("Y"),
         "Z": sympy.Symbol("Z"), "Zb": sympy.Symbol("Zb")}


def _sympy_scalar(c) -> PiGaussCoeff:
    c = sympy.expand(c)
    poly = sympy.Poly(c, sympy.pi)
    out = PiGaussCoeff()
    for (k,), a in poly.terms():
        re_, im_ = sympy.re(a), sympy.im(a)
        if not (re_.is_Rational and im_.is_Rational):
            raise SchemaError(f"coefficient {a} is not an exact Gaussian rational")
        out = out + PiGaussCoeff.pi(k, GaussRational(sympy_rat(re_), sympy_rat(im_)))
    return out


def sympy_rat(r):
    return rat(f"{r.p}/{r.q}")


def parse_expr(expr: str, order: int, basis="XY") -> SmoothJet:
    names = ("X", "Y") if basis == "XY" else ("Z", "Zb")
    gens = [_SYMS[n] for n in names]
    try:
        e = sympy.sympify(expr, locals={**_SYMS, "pi": sympy.pi, "I": sympy.I})
        poly = sympy.Poly(sympy.expand(e), *gens)
    except (sympy.SympifyError, sympy.PolynomialError, TypeError, SyntaxError) as exc:
        raise SchemaError(f"cannot parse expression {expr!r}: {exc}") from None
    coeffs = {}
    for (p, q), c in poly.terms():
        if p + q <= order:
            coeffs[(p, q)] = _sympy_scalar(c)
    try:
        return SmoothJet(order, basis, coeffs)
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


def jet_from_json(data, order=None) -> SmoothJet:
    """Parse a jet; with ``order`` given, higher-order input is truncated."""
    if not isinstance(data, dict):
        raise SchemaError("a jet must be a JSON object")
    n = data.get("order", order)
    if n is None:
        raise SchemaError("jet order missing")
    n = int(n)
    if order is not None and n < order:
        raise SchemaError(f"jet has order {n}, below the requested order {order}")
    basis = basis_from_json(data.get("basis", "XY"))
    if "expr" in data:
        f = parse_expr(str(data["expr"]), n, basis)
    else:
        try:
            f = SmoothJet(n, basis, _terms_from_json(data.get("terms", [])))
        except ValueError as exc:
            raise SchemaError(str(exc)) from None
    # a higher-order jet is truncated exactly to the requested order
    return f.truncate(order) if order is not None and order < n else f


def map_to_json(G) -> dict:
    if isinstance(G, VPlusJet):
        return {"order": G.order, "g": jet_to_json(G.g), "sign": G.sign}
    return {"order": G.order, "gc": jet_to_json(G.complex())}


def map_from_json(data, order=None):
    """A VPlusJet from ``{"g": ...}``; ``{"gc": ...}`` gives a VPlusJet when
    the complex jet preserves the abscissa and a PlaneJet otherwise."""
    if not isinstance(data, dict):
        raise SchemaError("a map jet must be a JSON object")
    n = order if order is not None else data.get("order")
    try:
        if "g" in data:
            g = jet_from_json(data["g"], n)
            return VPlusJet(g, data.get("sign", "+"))
        if "gc" in data:
            gc = jet_from_json(data["gc"], n)
            if gc.basis == "XY":
                raise SchemaError("gc must be given in a complex basis")
            P = PlaneJet(gc)
            return P.to_vplus() if P.is_vplus() else P
    except SchemaError:
        raise
    except ValueError as exc:
        raise SchemaError(str(exc)) from None
    raise SchemaError("map jet needs a 'g' or 'gc' field")


def vplus_from_json(data, order=None) -> VPlusJet:
    G = map_from_json(data, order)
    if not isinstance(G, VPlusJet):
        raise SchemaError("expected an abscissa-preserving jet")
    return G


# --- germs -----------------------------------------------------------------------

def germ_to_json(f: LogLaurentGerm) -> dict:
    return {"order": f.order, "mu": mu_to_json(f.mu), "laurent": _terms_to_json(f.laurent),
            "lnz": jet_to_json(f.lnz), "lnzbar": jet_to_json(f.lnzbar)}


def germ_from_json(data) -> LogLaurentGerm:
    n = int(data["order"])
    mu = mu_from_json(data.get("mu", "0/1+0/1 i"))
    lau = {}
    for (p, q), c in _terms_from_json(data.get("laurent", [])).items():
        for k, v in c._raw().items():
            lau[(p, q, k)] = v
    lnz = jet_from_json(data["lnz"], n) if "lnz" in data else None
    lnzbar = jet_from_json(data["lnzbar"], n) if "lnzbar" in data else None
    return LogLaurentGerm(n, mu, lau, lnz, lnzbar)


def singular_to_json(sp: SingularPart) -> dict:
    return {"order": sp.order, "mu": mu_to_json(sp.mu), "empty": sp.is_empty(),
            "neg_terms": _terms_to_json(sp.neg_terms), "lnz": jet_to_json(sp.lnz),
            "lnzbar": jet_to_json(sp.lnzbar), "note": sp.note}


# --- labels and representatives -------------------------------------------------------

def label_to_json(l: CompleteFFLabel) -> dict:
    out = {"m": l.m, "order": l.order, "ts": [jet_to_json(s) for s in l.ts],
           "g": [[jet_to_json(x) for x in row] for row in l.g]}
    if l.mod2pi:
        out["mod2piX"] = True
    return out


def label_from_json(data, order=None) -> CompleteFFLabel:
    if not isinstance(data, dict):
        raise SchemaError("a label must be a JSON object")
    try:
        n = int(data["order"]) if order is None else order
        m = int(data["m"])
        ts = [jet_from_json(s, n) for s in data["ts"]]
        g = [[jet_from_json(x, n) for x in row] for row in data["g"]]
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"label is missing a field: {exc}") from None
    if len(ts) != m:
        raise SchemaError(f"label declares m={m} but has {len(ts)} entries")
    cls = FFLabel if data.get("mod2piX") else CompleteFFLabel
    try:
        return cls(ts, g)
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


def rep_to_json(rep: IngredientRep) -> dict:
    return {"vertices": [[rat_str(x), rat_str(y)] for x, y in rep.polygon.vertices],
            "points": [{"c": [rat_str(p.c[0]), rat_str(p.c[1])], "m": p.m} for p in rep.points],
            "labels": [label_to_json(l) for l in rep.labels]}


def rep_from_json(data, order=None) -> IngredientRep:
    try:
        poly = Polygon([(rat(x), rat(y)) for x, y in data["vertices"]])
        pts = [MarkedPoint((rat(p["c"][0]), rat(p["c"][1])), int(p.get("m", 1)))
               for p in data["points"]]
        labels = [label_from_json(l, order) for l in data["labels"]]
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"representative is missing a field: {exc}") from None
    except SchemaError:
        raise
    except ValueError as exc:
        raise SchemaError(str(exc)) from None
    return IngredientRep(poly, pts, labels)


# --- reports ---------------------------------------------------------------------------

def certificate_to_json(c: EquivalenceCertificate) -> dict:
    return {"G": map_to_json(c.G), "corrections": [jet_to_json(s) for s in c.corrections],
            "residual": singular_to_json(c.residual),
            "mismatch": None if c.mismatch is None else jet_to_json(c.mismatch),
            "order": c.order, "verdict": c.verdict, "rotation": c.rotation, "notes": c.notes}


def lift_to_json(r: LiftReport) -> dict:
    return {"mu": mu_to_json(r.mu), "liftable": r.liftable, "holomorphic": r.holomorphic,
            "failing_coeffs": [list(pq) for pq in r.failing_coeffs], "order": r.order}


def admissibility_to_json(a: Admissibility) -> dict:
    return {"verdict": a.verdict, "witness": singular_to_json(a.witness),
            "prop_verdict": a.prop_verdict, "order": a.order}


def to_json(obj) -> Any:
    """Dispatch on type."""
    table = [(SmoothJet, jet_to_json), ((VPlusJet, PlaneJet), map_to_json),
             (LogLaurentGerm, germ_to_json), (SingularPart, singular_to_json),
             (CompleteFFLabel, label_to_json), (IngredientRep, rep_to_json),
             (EquivalenceCertificate, certificate_to_json), (LiftReport, lift_to_json),
             (Admissibility, admissibility_to_json), (Mu, mu_to_json),
             ((GaussRational,), gauss_to_json), (PiGaussCoeff, coeff_to_json)]
    for cls, fn in table:
        if isinstance(obj, cls):
            return fn(obj)
    raise TypeError(f"no JSON form for {type(obj).__name__}")
