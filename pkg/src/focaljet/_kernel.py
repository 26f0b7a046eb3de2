"""Raw truncated bivariate series over Q(i)[pi].

A raw series is a plain dict ``{(p, q, k): (re, im)}`` meaning
``sum (re + i im) * pi**k * u**p * v**q``.  Exponents ``p, q`` may be
negative (Laurent germs), ``k`` is the power of the formal pi.  Zero
entries are never stored.  All public classes wrap these dicts; keeping
the hot loops on bare tuples of ``mpq`` is what keeps the exhaustive
searches in the test-suite fast.
"""

from gmpy2 import mpq

ZERO = mpq(0)
ONE = mpq(1)
HALF = mpq(1, 2)


def cmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def cinv(a):
    n = a[0] * a[0] + a[1] * a[1]
    if n == 0:
        raise ZeroDivisionError("zero divisor")
    return (a[0] / n, -a[1] / n)


def clean(d):
    return {k: v for k, v in d.items() if v[0] or v[1]}


def add(a, b):
    out = dict(a)
    for key, (br, bi) in b.items():
        if key in out:
            ar, ai = out[key]
            r, i = ar + br, ai + bi
            if r or i:
                out[key] = (r, i)
            else:
                del out[key]
        else:
            out[key] = (br, bi)
    return out


def neg(a):
    return {k: (-r, -i) for k, (r, i) in a.items()}


def sub(a, b):
    return add(a, neg(b))


def scale(a, c):
    """Multiply by a pi-free Gaussian rational ``c = (re, im)``."""
    if not (c[0] or c[1]):
        return {}
    cr, ci = c
    out = {}
    for key, (r, i) in a.items():
        out[key] = (r * cr - i * ci, r * ci + i * cr)
    return out


def scale_pi(a, craw):
    """Multiply by a scalar given as ``{pi_power: (re, im)}``."""
    out = {}
    for k2, c in craw.items():
        for (p, q, k), v in a.items():
            key = (p, q, k + k2)
            prod = cmul(v, c)
            if key in out:
                o = out[key]
                prod = (o[0] + prod[0], o[1] + prod[1])
            out[key] = prod
    return clean(out)


def truncate(a, n):
    return {k: v for k, v in a.items() if k[0] + k[1] <= n}


def mul(a, b, n):
    """Product truncated at total degree ``n``."""
    if not a or not b:
        return {}
    out = {}
    bl = list(b.items())
    for (p1, q1, k1), (r1, i1) in a.items():
        d1 = p1 + q1
        for (p2, q2, k2), (r2, i2) in bl:
            if d1 + p2 + q2 > n:
                continue
            key = (p1 + p2, q1 + q2, k1 + k2)
            r = r1 * r2 - i1 * i2
            i = r1 * i2 + i1 * r2
            if key in out:
                o = out[key]
                out[key] = (o[0] + r, o[1] + i)
            else:
                out[key] = (r, i)
    return clean(out)


def one():
    return {(0, 0, 0): (ONE, ZERO)}


def monomial(p, q, c=(ONE, ZERO), k=0):
    if not (c[0] or c[1]):
        return {}
    return {(p, q, k): c}


def powers(a, count, n):
    """``[a**0, a**1, ..., a**count]`` truncated at degree ``n``."""
    out = [one()]
    for _ in range(count):
        out.append(mul(out[-1], a, n))
    return out


def min_degree(a):
    return min((p + q for (p, q, _k) in a), default=None)


def substitute(f, u, v, n):
    """``f(u, v)`` truncated at degree ``n``; ``u`` and ``v`` must have no
    constant term unless ``f`` is a polynomial (which truncated jets are)."""
    if not f:
        return {}
    maxp = max(p for (p, _q, _k) in f)
    maxq = max(q for (_p, q, _k) in f)
    up = powers(u, maxp, n)
    vp = powers(v, maxq, n)
    # group by p so each u**p is multiplied once
    by_p = {}
    for (p, q, k), c in f.items():
        by_p.setdefault(p, {})
        inner = scale_pi(vp[q], {k: c})
        by_p[p] = add(by_p[p], inner)
    out = {}
    for p, inner in by_p.items():
        out = add(out, mul(up[p], inner, n))
    return out


def conj(a):
    return {k: (r, -i) for k, (r, i) in a.items()}


def conj_swap(a):
    """Complex conjugation in a (Z, Zbar) style basis."""
    return {(q, p, k): (r, -i) for (p, q, k), (r, i) in a.items()}


def shift(a, dp, dq):
    return {(p + dp, q + dq, k): v for (p, q, k), v in a.items()}


def coeff(a, p, q, k=0):
    return a.get((p, q, k), (ZERO, ZERO))


def homogeneous(a, d):
    return {key: v for key, v in a.items() if key[0] + key[1] == d}
