""" Dense univariate polynomials over the rationals.

Polynomials are lists of coefficients ordered from the constant term upwards, e.g. ``[-1, -1, 1]`` is
``x**2 - x - 1``. Coefficients are ints or Fractions; nothing here rounds.
"""
from fractions import Fraction
from math import gcd


def trim(p: list) -> list:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p: list) -> int:
    return len(trim(p)) - 1


def add(p: list, q: list) -> list:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def scale(p: list, c) -> list:
    return trim([c * a for a in p])


def sub(p: list, q: list) -> list:
    return add(p, scale(q, -1))


def mul(p: list, q: list) -> list:
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def derivative(p: list) -> list:
    return trim([i * p[i] for i in range(1, len(p))])


def divmod_poly(p: list, q: list) -> tuple[list, list]:
    """ Euclidean division over the rationals.

    Raises:
        ZeroDivisionError: If `q` is the zero polynomial.
    """
    q = trim(q)
    if not q:
        raise ZeroDivisionError('polynomial division by zero')
    r = [Fraction(a) for a in trim(p)]
    lead = Fraction(q[-1])
    dq = len(q) - 1
    quot = [Fraction(0)] * max(len(r) - dq, 0)
    while len(r) - 1 >= dq and r:
        shift = len(r) - 1 - dq
        c = r[-1] / lead
        quot[shift] = c
        for i, b in enumerate(q):
            r[shift + i] -= c * b
        r = trim(r)
    return trim(quot), r


def rem(p: list, q: list) -> list:
    return divmod_poly(p, q)[1]


def sign_at(p: list, num: int, exp: int) -> int:
    """ Sign of p(num / 2**exp) for an integer polynomial, evaluated without fractions. """
    n = len(p) - 1
    total = 0
    for i, a in enumerate(p):
        if a:
            total += a * num ** i * (1 << (exp * (n - i)))
    return (total > 0) - (total < 0)


def sturm_sequence(p: list) -> list:
    """ Sturm sequence p, p', -rem(p, p'), ... of a square-free polynomial. """
    seq = [trim([Fraction(a) for a in p]), derivative([Fraction(a) for a in p])]
    while seq[-1]:
        seq.append(scale(rem(seq[-2], seq[-1]), -1))
    return seq[:-1]


def _variations(seq: list, x: Fraction) -> int:
    signs = []
    for s in seq:
        v = evaluate(s, x)
        if v != 0:
            signs.append(v > 0)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(seq: list, lo: Fraction, hi: Fraction) -> int:
    """ Number of distinct real roots in (lo, hi] from a precomputed Sturm sequence. """
    return _variations(seq, Fraction(lo)) - _variations(seq, Fraction(hi))


def evaluate(p: list, x):
    acc = 0
    for a in reversed(p):
        acc = acc * x + a
    return acc


def fujiwara_bound(p: list) -> int:
    """ Integer upper bound on the moduli of the roots of a monic integer polynomial.

    Uses Fujiwara's bound 2 * max(|p_{n-1}|, |p_{n-2}|^(1/2), ..., |p_0 / 2|^(1/n)) with every k-th root
    rounded up to an integer.
    """
    p = trim(p)
    n = len(p) - 1
    best = 1
    for k in range(1, n + 1):
        t = abs(p[n - k])
        if t == 0:
            continue
        r = 1
        if k == n:
            while 2 * r ** k < t:
                r += 1
        else:
            while r ** k < t:
                r += 1
        best = max(best, r)
    return 2 * best


def _primitive(p: list) -> list:
    g = 0
    for a in p:
        g = gcd(g, a)
    return [a // g for a in p] if g > 1 else p


def count_roots_in_disk(p: list, num: int, den: int) -> int | None:
    """ Counts the roots of an integer polynomial strictly inside |z| < num/den.

    Runs the Schur-Cohn chain on p(num/den * z): with p* the reversed polynomial, the transform
    T p = p(0) p - p_n p* drops the degree and keeps (p(0)^2 > p_n^2) or complements (p(0)^2 < p_n^2) the
    number of roots inside the unit disk. A chain with every p(0)^2 != p_n^2 certifies that no root lies on
    the circle, so the count is exact.

    Returns:
        The root count, or None when the chain is singular for this radius.
    """
    p = trim(p)
    n = len(p) - 1
    scaled = _primitive([a * num ** i * den ** (n - i) for i, a in enumerate(p)])

    def count(q: list) -> int | None:
        q = trim(q)
        m = len(q) - 1
        if m <= 0:
            return 0
        q0, qn = q[0], q[-1]
        delta = q0 * q0 - qn * qn
        if delta == 0:
            return None
        rev = list(reversed(q))
        t = _primitive(trim([q0 * a - qn * b for a, b in zip(q, rev)]))
        if not t:
            return None
        inner = count(t)
        if inner is None:
            return None
        return inner if delta > 0 else m - inner

    return count(scaled)
