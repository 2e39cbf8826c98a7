"""Projective points, Mobius matrices and quadratics over the boundary circle.

Two scalar backends share the same formulas: exact integers (surfaces with
punctures, where the shear-0 developing map keeps every triangle vertex
rational) and mpmath reals with margin-checked signs (closed surfaces).

Conventions.  A point of the boundary R u {oo} is a homogeneous pair
``(p, q)`` meaning p/q, with ``oo = (1, 0)``.  A matrix is a 4-tuple
``(a, b, c, d)`` acting by ``x -> (a x + b) / (c x + d)``.  A geodesic is
recorded by the quadratic ``(A, B, C)`` whose roots are its endpoints,
evaluated homogeneously as ``A p^2 + B p q + C q^2``.
"""

from fractions import Fraction
from math import gcd, isqrt

import mpmath

ID = (1, 0, 0, 1)
INF = (1, 0)


class PrecisionError(Exception):
    """A numeric sign test fell inside the safety margin."""


# ---------------------------------------------------------------------------
# scalar backends


class ExactScalars:
    """Arbitrary-precision integer scalars; every test is exact."""

    exact = True

    @staticmethod
    def sign(v):
        return (v > 0) - (v < 0)

    @staticmethod
    def norm_tuple(t):
        g = 0
        for x in t:
            g = gcd(g, abs(x))
        if g > 1:
            t = tuple(x // g for x in t)
        for x in t:
            if x:
                if x < 0:
                    t = tuple(-y for y in t)
                break
        return t

    @staticmethod
    def sqrt_sign(r, s, D):
        """Sign of r + s*sqrt(D), with D >= 0."""
        if s == 0:
            return (r > 0) - (r < 0)
        if r == 0:
            return (s > 0) - (s < 0)
        if (r > 0) == (s > 0):
            return 1 if r > 0 else -1
        t = r * r - s * s * D
        sgn = (t > 0) - (t < 0)
        return sgn if r > 0 else -sgn

    @staticmethod
    def ratio(p, q):
        return Fraction(p, q)

    @staticmethod
    def is_square(D):
        if D < 0:
            return False
        r = isqrt(D)
        return r * r == D


class NumericScalars:
    """mpmath scalars; signs carry a safety margin relative to scale."""

    exact = False

    def __init__(self, dps=80, margin_exp=-40):
        self.dps = dps
        self.margin = mpmath.mpf(10) ** margin_exp

    def sign(self, v):
        av = abs(v)
        if av <= self.margin:
            return 0
        return 1 if v > 0 else -1

    def checked_sign(self, v, scale=1):
        """Sign that must be decisive relative to the working scale."""
        s = self.sign(v / scale if scale != 1 else v)
        if s == 0:
            raise PrecisionError("ambiguous sign in numeric kernel")
        return s

    @staticmethod
    def norm_tuple(t):
        m = max(abs(x) for x in t)
        if m == 0:
            return t
        t = tuple(x / m for x in t)
        for x in t:
            if abs(x) > mpmath.mpf("1e-30"):
                if x < 0:
                    t = tuple(-y for y in t)
                break
        return t

    def sqrt_sign(self, r, s, D):
        return self.sign(r + s * mpmath.sqrt(D))

    @staticmethod
    def ratio(p, q):
        return p / q

    @staticmethod
    def is_square(D):
        return False


EXACT = ExactScalars()


# ---------------------------------------------------------------------------
# projective points and matrices


def pt(p, q, sc=EXACT):
    return sc.norm_tuple((p, q))


def mat_mul(M, N):
    a, b, c, d = M
    e, f, g, h = N
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def mat_det(M):
    return M[0] * M[3] - M[1] * M[2]


def mat_inv(M):
    a, b, c, d = M
    det = a * d - b * c
    if det == 1:
        return (d, -b, -c, a)
    if det == -1:
        return (-d, b, c, -a)
    # projective inverse is the adjugate regardless of scale
    return (d, -b, -c, a)


def mat_apply(M, x, sc=EXACT):
    a, b, c, d = M
    p, q = x
    return sc.norm_tuple((a * p + b * q, c * p + d * q))


def mat_norm(M, sc=EXACT):
    return sc.norm_tuple(M)


def mat_trace(M):
    return M[0] + M[3]


def _std_to(tri):
    """Matrix sending (0, 1, oo) to the given projective triple."""
    (p1, q1), (p2, q2), (p3, q3) = tri
    l = p2 * q1 - p1 * q2
    m = p3 * q2 - p2 * q3
    return (p3 * l, p1 * m, q3 * l, q1 * m)


def mat_from_3pts(src, dst, sc=EXACT):
    """Mobius matrix taking the triple src to the triple dst."""
    a, b, c, d = _std_to(src)
    return sc.norm_tuple(mat_mul(_std_to(dst), (d, -b, -c, a)))


def pt_eq(x, y, sc=EXACT):
    v = x[0] * y[1] - x[1] * y[0]
    if sc.exact:
        return v == 0
    scale = max(abs(x[0]), abs(x[1])) * max(abs(y[0]), abs(y[1]))
    return abs(v) <= sc.margin * (scale if scale else 1)


# ---------------------------------------------------------------------------
# quadratics (geodesics)


def axis_quad(M, sc=EXACT):
    """Quadratic vanishing at the fixed points of M (must be hyperbolic-like).

    Returns (A, B, C) with roots the fixed points of x -> (ax+b)/(cx+d).
    The overall sign is NOT normalized: relative to the representative M, the
    'plus' root (-B + sqrt(D))/(2A) is the attracting fixed point exactly when
    tr(M) > 0 (see attracting_sign), and that labeling must be preserved.
    """
    a, b, c, d = M
    A, B, C = c, d - a, -b
    if sc.exact:
        from math import gcd
        g = gcd(gcd(abs(A), abs(B)), abs(C))
        if g > 1:
            A, B, C = A // g, B // g, C // g
    return (A, B, C)


def quad_disc(Q):
    A, B, C = Q
    return B * B - 4 * A * C


def quad_eval(Q, x):
    A, B, C = Q
    p, q = x
    return A * p * p + B * p * q + C * q * q


def quad_transform(Q, M, sc=EXACT):
    """Quadratic with roots M^{-1}(roots of Q):  Q'(v) = Q(M v)."""
    A, B, C = Q
    a, b, c, d = M
    A2 = A * a * a + B * a * c + C * c * c
    B2 = 2 * A * a * b + B * (a * d + b * c) + 2 * C * c * d
    C2 = A * b * b + B * b * d + C * d * d
    return sc.norm_tuple((A2, B2, C2))


def side_quad(a, b, sc=EXACT):
    """Quadratic with roots at the two given points."""
    (p1, q1), (p2, q2) = a, b
    return sc.norm_tuple((q1 * q2, -(p1 * q2 + p2 * q1), p1 * p2))


def signs_at_roots(P, Q, sc=EXACT):
    """Signs of P at the two roots of Q.

    Returns (s_minus, s_plus) where the roots are (-B -+ sqrt(D)) / (2A)
    for Q = (A, B, C); the result is scaled by the (positive) factor 2A^2.
    """
    A, B, C = Q
    D = B * B - 4 * A * C
    a2, b2, c2 = P
    u = b2 * A - a2 * B
    v = c2 * A - a2 * C
    r = 2 * A * v - u * B
    return (sc.sqrt_sign(r, -u, D), sc.sqrt_sign(r, u, D))


def attracting_sign(M, sc=EXACT):
    """+1 if the attracting fixed point is the 'plus' root, else -1.

    For a fixed point x of M, c x + d is the eigenvalue of the eigenvector
    (x, 1); at the plus root it equals (tr + sqrt(D)) / 2.
    """
    t = mat_trace(M)
    s = sc.sign(t)
    if s == 0:
        raise ValueError("trace-zero matrix has no attracting fixed point")
    return s


def crosses(Q, a, b, sc=EXACT):
    """Does the geodesic of Q separate points a and b strictly?"""
    return sc.sign(quad_eval(Q, a)) * sc.sign(quad_eval(Q, b)) < 0


def cross_pos(Q, a, b, sc=EXACT):
    """Position of the crossing of geodesic Q with the geodesic (a, b).

    The side is parameterized by mapping a -> 0, b -> oo; the crossing sits at
    height t on the vertical line, and t^2 is returned.  When both roots of Q
    are conjugate under the same rational map, t^2 is rational: exact backends
    return a Fraction.  The caller must know that the crossing exists.
    """
    (p1, q1), (p2, q2) = a, b
    Li = (-p2, p1, -q2, q1)  # inverse (up to scale) of a -> 0, b -> oo
    A2, B2, C2 = quad_transform(Q, Li, sc)
    if sc.sign(A2) == 0:
        raise ZeroDivisionError("geodesic through the far endpoint of the side")
    t2 = sc.ratio(-C2, A2)
    return t2
