"""Random exact objects shared by the test modules."""

import random

from gmpy2 import mpq
from hypothesis import strategies as st

from focaljet.coeffring import GaussRational, PiGaussCoeff
from focaljet.jet import Mu, SmoothJet, VPlusJet, to_basis
from focaljet.label import generate

SMALL = [mpq(1), mpq(-1), mpq(1, 2), mpq(-1, 2), mpq(2), mpq(-1, 3)]


def rand_rat(rng, zero_ok=True):
    vals = SMALL + ([mpq(0)] if zero_ok else [])
    return rng.choice(vals)


def rand_gauss(rng):
    return GaussRational(rand_rat(rng), rand_rat(rng))


def rand_real_jet(rng, n, density=0.5, constant=True, pi=False):
    coeffs = {}
    for d in range(0 if constant else 1, n + 1):
        for p in range(d + 1):
            if rng.random() < density:
                c = PiGaussCoeff.coerce(rand_rat(rng))
                if pi and rng.random() < 0.3:
                    c = c + PiGaussCoeff.pi(1, rand_rat(rng))
                coeffs[(p, d - p)] = c
    return SmoothJet(n, "XY", coeffs)


def rand_vplus(rng, n, density=0.4):
    """Random ``(X, g)`` with ``g_Y > 0``."""
    coeffs = {(0, 1): rng.choice([mpq(1), mpq(2), mpq(1, 2), mpq(3, 2)]),
              (1, 0): rand_rat(rng)}
    for d in range(2, n + 1):
        for p in range(d + 1):
            if rng.random() < density:
                coeffs[(p, d - p)] = rand_rat(rng)
    return VPlusJet.from_coeffs(n, coeffs)


def rand_real_mu_poly(rng, n, density=0.4):
    """Real ``r`` in a ``Z_mu`` basis with no pure-power terms."""
    coeffs = {}
    for d in range(2, n + 1):
        for p in range(1, d):
            q = d - p
            if p > q or rng.random() >= density:
                continue
            c = GaussRational(rand_rat(rng)) if p == q else rand_gauss(rng)
            coeffs[(p, q)] = coeffs.get((p, q), 0) + c
            if p != q:
                coeffs[(q, p)] = c.conj()
    return coeffs


def liftable_from_r(n, mu: Mu, r):
    """``G_C = Z_mu + i r`` as an abscissa-preserving jet."""
    gc = {(1, 0): GaussRational(1)}
    for k, v in r.items():
        gc[k] = gc.get(k, GaussRational(0)) + GaussRational(0, 1) * v
    return VPlusJet.from_complex(to_basis(SmoothJet(n, mu, gc), "Z"))


def rand_liftable(rng, n, mu: Mu, density=0.4):
    return liftable_from_r(n, mu, rand_real_mu_poly(rng, n, density))


def rand_label(rng, m, n, complete=True, density=0.4):
    chain = []
    while len(chain) < m - 1:
        c = rand_vplus(rng, n, density).g
        if c not in chain:
            chain.append(c)
    seed = rand_real_jet(rng, n, density, constant=complete, pi=True)
    return generate(m, chain, seed, n, complete=complete)


# --- hypothesis strategies -------------------------------------------------------

seeds = st.integers(min_value=0, max_value=10 ** 9)
orders = st.integers(min_value=1, max_value=5)


@st.composite
def vplus_jets(draw, n=None):
    n = draw(orders) if n is None else n
    return rand_vplus(random.Random(draw(seeds)), n)


@st.composite
def real_jets(draw, n):
    return rand_real_jet(random.Random(draw(seeds)), n, pi=True)


@st.composite
def labels(draw, max_m=3, n=None):
    m = draw(st.integers(min_value=1, max_value=max_m))
    n = draw(st.integers(min_value=1, max_value=4)) if n is None else n
    return rand_label(random.Random(draw(seeds)), m, n)
