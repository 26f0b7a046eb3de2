import json
import random

import pytest
from hypothesis import given

from focaljet import serialize as S
from focaljet.affine import label_equivalent, lift_report, permutation_example
from focaljet.coeffring import GaussRational, PiGaussCoeff
from focaljet.germ import expand_g_ln_g, singular_part
from focaljet.jet import Mu, PlaneJet, VPlusJet, Z, Zbar, to_basis
from helpers import labels, rand_real_jet, real_jets, vplus_jets
from polyfix import two_node_reps


def _rt(obj, to, frm):
    text = S.dumps(to(obj))
    return frm(json.loads(text)), text


@given(real_jets(4))
def test_jet_round_trip(f):
    back, text = _rt(f, S.jet_to_json, S.jet_from_json)
    assert back == f
    assert S.dumps(S.jet_to_json(back)) == text
    mu = Mu(GaussRational(0, 1) / 3)
    g = to_basis(f, mu)
    assert S.jet_from_json(json.loads(S.dumps(S.jet_to_json(g)))) == g


@given(vplus_jets())
def test_map_round_trip(G):
    assert S.map_from_json(json.loads(S.dumps(S.map_to_json(G)))) == G


@given(labels())
def test_label_round_trip(l):
    back, _ = _rt(l, S.label_to_json, S.label_from_json)
    assert back == l


def test_rep_round_trip():
    rep, rep2, _ = two_node_reps(3)
    back, _ = _rt(rep2, S.rep_to_json, S.rep_from_json)
    assert back == rep2


def test_germ_round_trip():
    G = VPlusJet.from_coeffs(4, {(0, 1): 2, (1, 1): 1})
    germ = expand_g_ln_g(G)
    back, _ = _rt(germ, S.germ_to_json, S.germ_from_json)
    assert back == germ


def test_expression_input():
    f = S.jet_from_json({"order": 3, "expr": "2*pi*X + Y + X*Y/3 + pi**2*Y**2"})
    assert f.coeff(1, 0) == PiGaussCoeff.pi(1, 2)
    assert f.coeff(0, 2) == PiGaussCoeff.pi(2, 1)
    g = S.map_from_json({"gc": {"order": 3, "basis": "Z", "expr": "Z + I*Z*Zb"}})
    assert isinstance(g, VPlusJet)
    p = S.map_from_json({"gc": {"order": 3, "basis": "Z", "expr": "Z + Zb**2"}})
    assert isinstance(p, PlaneJet)


def test_truncation_to_requested_order():
    f = rand_real_jet(random.Random(1), 5)
    assert S.jet_from_json(S.jet_to_json(f), 3) == f.truncate(3)
    with pytest.raises(S.SchemaError):
        S.jet_from_json(S.jet_to_json(f.truncate(2)), 3)


@pytest.mark.parametrize("bad", [
    {"basis": "XY", "terms": []},
    {"order": 2, "basis": "UV"},
    {"order": 2, "terms": [{"p": 0, "q": 1, "coeff": "x"}]},
    {"order": 2, "terms": [{"p": 0, "q": 1}, {"p": 0, "q": 1}]},
    {"order": 2, "expr": "sin(X)"},
    {"order": 2, "expr": "I*X"},
])
def test_schema_errors(bad):
    with pytest.raises(S.SchemaError):
        S.jet_from_json(bad)


def test_reports_are_deterministic():
    l, lp, G = permutation_example(3, N=3)
    a = S.dumps(S.certificate_to_json(label_equivalent(l, lp, G)))
    b = S.dumps(S.certificate_to_json(label_equivalent(l, lp, G)))
    assert a == b and '"verdict": true' in a
    rep = lift_report(PlaneJet(Z(3) + Zbar(3) ** 2))
    assert S.to_json(rep)["failing_coeffs"] == [[0, 2]]
    sp_ = singular_part(expand_g_ln_g(VPlusJet.identity(3)))
    assert S.to_json(sp_)["empty"] is False
