"""Random generators shared by the test modules."""
import random
from fractions import Fraction

from crosscap import CrossCapGerm, RATIONAL


def rand_rational(rng, num=4, den=4, positive=False):
    p = rng.randint(1 if positive else -num, num)
    return Fraction(p, rng.randint(1, den))


def random_germ(rng, order=8, z_order=6, b_order=6, num=4, den=4, ring=RATIONAL):
    """A germ with random z coefficients of order <= z_order and b_3..b_{b_order}."""
    a = {}
    for n in range(2, min(z_order, order) + 1):
        for j in range(n + 1):
            a[j, n - j] = rand_rational(rng, num, den)
    a[0, 2] = rand_rational(rng, num, den, positive=True)
    b = {r: rand_rational(rng, num, den) for r in range(3, min(b_order, order) + 1)}
    return CrossCapGerm(order, a, b, ring)


def random_beta(rng, order, num=4, den=4):
    return {r: rand_rational(rng, num, den) for r in range(3, order + 2)}


def dyadic(rng, lo=-2, hi=2, bits=3):
    """A dyadic rational in [lo, hi] with denominator 2**bits."""
    q = 2**bits
    return Fraction(rng.randint(lo * q, hi * q), q)


def dyadic_germ(rng, order=8, z_order=6, b_order=6):
    a = {}
    for n in range(2, min(z_order, order) + 1):
        for j in range(n + 1):
            a[j, n - j] = dyadic(rng)
    a[0, 2] = Fraction(rng.randint(1, 16), 8)
    b = {r: dyadic(rng) for r in range(3, b_order + 1)}
    return CrossCapGerm(order, a, b, RATIONAL)


def seeded(seed):
    return random.Random(seed)
