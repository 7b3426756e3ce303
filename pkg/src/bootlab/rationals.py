"""Exact rational / integer vector helpers.

All semantic decisions in this package are made with exact arithmetic:
integer lattice coordinates, integer directions, and ``fractions.Fraction``
for everything else.  Vectors are plain tuples so they can be dict keys
and set members.
"""

from fractions import Fraction
from math import gcd, isqrt


def dot(a, b):
    """Inner product of two vectors (int or Fraction entries)."""
    return sum(x * y for x, y in zip(a, b))


def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vneg(a):
    return tuple(-x for x in a)


def vscale(s, a):
    return tuple(s * x for x in a)


def norm2(a):
    return sum(x * x for x in a)


def is_zero(a):
    return all(x == 0 for x in a)


def as_fractions(a):
    return tuple(Fraction(x) for x in a)


def reduce_direction(v):
    """Gcd-reduce an integer vector, keeping its sign (the sign is the point
    on the sphere, so it is semantically meaningful)."""
    v = tuple(int(x) for x in v)
    if all(x == 0 for x in v):
        raise ValueError("zero vector is not a direction")
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    return tuple(x // g for x in v)


def rational_to_integer_vector(v):
    """Scale a rational vector by a positive factor to a gcd-reduced integer
    vector (same ray)."""
    fr = [Fraction(x) for x in v]
    if all(x == 0 for x in fr):
        raise ValueError("zero vector has no direction")
    denom = 1
    for x in fr:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in fr]
    return reduce_direction(ints)


def parse_fraction(s):
    """Parse "p/q" or "p" (also accepts ints/floats that are exact)."""
    if isinstance(s, Fraction):
        return s
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        return Fraction(s)
    raise TypeError(f"cannot parse rational from {s!r}")


def format_fraction(x):
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def sqrt_upper_bound(x, scale=10**6):
    """A rational q with q*q >= x (x a nonnegative Fraction), reasonably tight."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("negative argument")
    if x == 0:
        return Fraction(0)
    n = x.numerator * scale * scale
    d = x.denominator
    r = isqrt(n * d)
    q = Fraction(r + 1, d * scale)
    assert q * q >= x
    return q


def sign(x):
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0
