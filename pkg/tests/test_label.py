import random

import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from focaljet.coeffring import PiGaussCoeff
from focaljet.jet import SmoothJet, X, Y
from focaljet.label import (CompleteFFLabel, FFLabel, LabelError, equal_mod_2pi_x,
                            extract_generators, generate, is_cyclic, is_valid,
                            normalize_mod_2pi_x, rotation, to_ff_label, validate, z2_action,
                            zm_reindex, zr_shift)
from helpers import labels, rand_label


def _pi_x(n, c):
    return SmoothJet(n, "XY", {(1, 0): PiGaussCoeff.pi(1, c)})


def test_normalize_mod_2pi_x():
    n = 3
    f = Y(n) + _pi_x(n, 5)
    assert normalize_mod_2pi_x(f) == Y(n) + _pi_x(n, 1)
    assert normalize_mod_2pi_x(Y(n) + _pi_x(n, -1)) == Y(n) + _pi_x(n, 1)
    assert equal_mod_2pi_x(Y(n), Y(n) + _pi_x(n, 4))
    assert not equal_mod_2pi_x(Y(n), Y(n) + _pi_x(n, 1))


def test_generate_small_label():
    n = 3
    g01 = Y(n) + X(n) * Y(n)
    seed = Y(n) * Y(n)
    l = generate(2, [g01], seed, n)
    assert l.g[0][1] == g01
    assert l.g[0][0] == Y(n) and l.g[1][1] == Y(n)
    assert validate(l) == []
    assert extract_generators(l) == ([g01], seed)


@given(labels())
def test_generated_labels_are_valid(l):
    assert validate(l) == []
    chain, seed = extract_generators(l)
    assert generate(l.m, chain, seed) == l


def test_tampered_label_is_rejected():
    l = rand_label(random.Random(5), 3, 3)
    ts = list(l.ts)
    ts[1] = ts[1] + X(3) * X(3)
    bad = validate(l.with_ts(ts))
    assert bad and all("relation 1" in b for b in bad)
    g = [list(r) for r in l.g]
    g[0][0] = Y(3) + X(3)
    assert any("relation 2" in b for b in validate(CompleteFFLabel(l.ts, g)))
    g = [list(r) for r in l.g]
    g[0][1] = -Y(3)
    assert any("R_+" in b for b in validate(CompleteFFLabel(l.ts, g)))


def test_label_shape_errors():
    with pytest.raises(LabelError):
        CompleteFFLabel([], [])
    with pytest.raises(LabelError):
        CompleteFFLabel([Y(2)], [[Y(2), Y(2)]])
    with pytest.raises(LabelError):
        FFLabel([Y(2) + SmoothJet(2, "XY", {(0, 0): 1})], [[Y(2)]])
    with pytest.raises(LabelError):
        generate(3, [Y(2)], Y(2))


@given(labels(), st.integers(0, 2), st.integers(0, 2))
def test_z2_action_laws(l, k, k2):
    a = z2_action(l, k)
    assert is_valid(a)
    assert z2_action(a, k) == l
    # on plain labels the action only depends on k mod 2
    f = to_ff_label(l)
    assert z2_action(f, k) == z2_action(f, k + 2)
    assert z2_action(z2_action(f, k), k2) == z2_action(z2_action(f, k2), k)


@given(labels(), st.randoms(use_true_random=False))
def test_zm_reindex_laws(l, rnd):
    sigma = list(range(l.m))
    tau = list(range(l.m))
    rnd.shuffle(sigma)
    rnd.shuffle(tau)
    a = zm_reindex(l, sigma)
    assert is_valid(a)
    assert zm_reindex(a, tau) == zm_reindex(l, [sigma[t] for t in tau])
    assert zm_reindex(l, list(range(l.m))) == l


@given(labels(), st.integers(-2, 2), st.integers(-2, 2),
       st.fractions(max_denominator=4), st.fractions(max_denominator=4))
def test_zr_shift_laws(l, k1, k2, b1, b2):
    b1, b2 = mpq(b1.numerator, b1.denominator), mpq(b2.numerator, b2.denominator)
    a = zr_shift(l, k1, b1)
    assert is_valid(a)
    assert zr_shift(a, k2, b2) == zr_shift(l, k1 + k2, b1 + b2)
    assert zr_shift(l, 0, 0) == l


def test_zr_shift_needs_complete_label():
    with pytest.raises(LabelError):
        zr_shift(to_ff_label(rand_label(random.Random(1), 2, 2)), 1, 0)


def test_rotation_is_cyclic():
    assert is_cyclic(rotation(4, 3))
    assert not is_cyclic([1, 0, 2])
    assert is_cyclic([0])


def test_ff_label_equality_mod_2pi_x():
    l = to_ff_label(rand_label(random.Random(2), 2, 3))
    shifted = FFLabel([s + _pi_x(3, 2) for s in l.ts], l.g)
    assert shifted == l
    assert validate(shifted) == []


def test_chain_entries_must_lie_in_r_plus():
    with pytest.raises(LabelError):
        generate(2, [X(3)], Y(3))
