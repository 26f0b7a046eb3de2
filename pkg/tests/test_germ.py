import random

import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from focaljet.coeffring import GaussRational
from focaljet.germ import (GermError, LogLaurentGerm, admissibility_difference, cancel_common,
                           difference_germ, expand_g_ln_g, im_potential, is_smooth,
                           log_coefficient, obstruction_coefficients, power_sum_rigidity,
                           power_sums, power_sums_vanish, singular_part, smooth_difference)
from focaljet.jet import Mu, PlaneJet, SmoothJet, VPlusJet, Z, Zbar
from helpers import liftable_from_r, rand_liftable, rand_vplus, seeds
from oracles import g_ln_g_oracle, laurent_expr, numeric_g_ln_g_error, same

MUS = [Mu(0), Mu(mpq(1, 2)), Mu(GaussRational(mpq(1, 3), mpq(1, 3)))]


def test_log_coefficients():
    assert [log_coefficient(l) for l in (1, 2, 3)] == [mpq(1, 2), mpq(-1, 6), mpq(1, 12)]


def test_identity_germ_is_pure_log():
    germ = expand_g_ln_g(VPlusJet.identity(5))
    assert germ.laurent == {}
    assert germ.lnz == Z(5)
    assert not is_smooth(germ)


@given(seeds, st.integers(2, 5))
def test_expansion_matches_log_series(seed, n):
    G = rand_vplus(random.Random(seed), n)
    germ = expand_g_ln_g(G)
    assert same(laurent_expr(germ.laurent), g_ln_g_oracle(G.complex_in(G.mu()), n))


@pytest.mark.parametrize("seed", range(4))
def test_expansion_numerically(seed):
    n = 4
    G = rand_vplus(random.Random(seed), n)
    germ = expand_g_ln_g(G)
    gc = G.complex_in(G.mu())
    e1 = numeric_g_ln_g_error(germ, gc, 1e-3 + 2e-3j)
    e2 = numeric_g_ln_g_error(germ, gc, 1e-4 + 2e-4j)
    # remainder is O(|z|^(n+1)) up to a logarithm
    assert e2 <= e1 * 10 ** -(n) * 2
    assert e1 < 1e-10


def test_zbar_square_coefficient():
    # G_C = Z + c Zbar^2: the (-1, 4) coefficient of G ln G is c^2 / 2
    c = GaussRational(1, 2)
    P = PlaneJet(Z(4) + Zbar(4) * Zbar(4).scale(c))
    germ = expand_g_ln_g(P)
    assert germ.coeff(-1, 4).as_gauss() == c * c / 2


def test_mu_mismatch_raises():
    G = VPlusJet.from_coeffs(3, {(0, 1): 2})
    with pytest.raises(GermError, match="mu mismatch"):
        expand_g_ln_g(G, Mu(0))


@pytest.mark.parametrize("mu", MUS)
def test_im_potential_is_real(mu):
    G = rand_liftable(random.Random(7), 4, mu)
    assert im_potential(G, mu, 4).is_real()


def test_cancel_common_multiset():
    a = VPlusJet.identity(3)
    b = VPlusJet.from_coeffs(3, {(0, 1): 1, (1, 1): 1})
    left, right = cancel_common([a, a, b], [a, b, b])
    assert left == [a] and right == [b]


@pytest.mark.parametrize("mu", MUS)
def test_liftable_redistribution_is_admissible(mu):
    rng = random.Random(11)
    n = 5
    A, B = rand_liftable(rng, n, mu), rand_liftable(rng, n, mu)
    # same sum, different entries
    r = {(1, 1): GaussRational(1)}
    C = liftable_from_r(n, mu, r)
    A2 = VPlusJet.from_complex(A.complex() + C.complex() - _zmu(n, mu))
    B2 = VPlusJet.from_complex(B.complex() - C.complex() + _zmu(n, mu))
    assert admissibility_difference([A, B], [A2, B2]).is_empty()
    D = smooth_difference([A, B], [A2, B2])
    assert D.basis == "XY" and D.is_real()


def _zmu(n, mu):
    return SmoothJet(n, mu, {(1, 0): 1}).to_basis("Z")


def test_unequal_sums_are_decisive():
    G = VPlusJet.from_coeffs(4, {(0, 1): 1, (1, 1): 1})
    H = VPlusJet.from_coeffs(4, {(0, 1): 2})
    sp_ = admissibility_difference([VPlusJet.identity(4)], [G])
    assert not sp_.is_empty()
    sp2 = admissibility_difference([VPlusJet.identity(4)], [H])
    assert not sp2.is_empty() and "sums differ" in sp2.note
    with pytest.raises(GermError):
        difference_germ([VPlusJet.identity(4)], [H])


def test_non_liftable_entry_leaves_singular_terms():
    # inject c Zbar^2 - conj(c) Z^2 into an identity entry
    n, c = 4, GaussRational(1, 1)
    gc = Z(n) + (Zbar(n) * Zbar(n)).scale(c) - (Z(n) * Z(n)).scale(c.conj())
    G = VPlusJet.from_complex(gc)
    germ = difference_germ([VPlusJet.identity(n)], [G])
    sing = singular_part(germ)
    assert not sing.is_empty()
    # after taking imaginary parts the (-1, 4) coefficient is c^2 / (4i)
    assert germ.coeff(-1, 4).as_gauss() == c * c / GaussRational(0, 4)
    assert obstruction_coefficients(germ, 2)


def test_power_sums():
    vals = [GaussRational(1), GaussRational(-1)]
    assert power_sums(vals, 1, 3) == [0, 2, 0]
    assert not power_sums_vanish(vals)
    assert power_sums_vanish([GaussRational(0)])
    assert power_sum_rigidity([GaussRational(0), GaussRational(0)])


def test_germ_arithmetic():
    G = rand_vplus(random.Random(2), 3)
    f = expand_g_ln_g(G)
    assert (f - f).laurent == {}
    assert f.conj().conj() == f
    assert (f + f) == f.scale(2)
    assert LogLaurentGerm.of_smooth(Z(3)).smooth_part() == Z(3)
