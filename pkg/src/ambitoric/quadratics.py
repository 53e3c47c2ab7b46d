"""Exact algebra of quadratics, quartics and the Mobius gauge action.

Conventions used throughout the package:

* a quadratic is stored as the triple (c0, c1, c2) with
  p(z) = c0*z^2 + 2*c1*z + c2, i.e. c1 is HALF the linear coefficient;
* its polarization is the symmetric bivariate form
  p(x, y) = c0*x*y + c1*(x + y) + c2;
* the inner product of two quadratics is <q, p> = 2*q1*p1 - q2*p0 - q0*p2,
  a signature (2,1) form on the 3-space of quadratics;
* Mobius maps act on points of the projective line (infinity is the
  first-class value OO) and on polynomials as binary forms: quadratics
  with weight 1, quartics (and A, B of degree <= 4) with weight 2.

Coefficients are exact `fractions.Fraction` values; evaluation accepts
floats and degrades gracefully to double precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple, Union


# ---------------------------------------------------------------------------
# rationals and the projective line
# ---------------------------------------------------------------------------

RatLike = Union[int, str, Fraction]


def rat(v) -> Fraction:
    """Coerce ints, strings like '3/4' or '-2', Fractions and exact floats."""
    if isinstance(v, Fraction):
        return v
    if isinstance(v, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    if isinstance(v, float):
        if not math.isfinite(v):
            raise ValueError("non-finite float coefficient")
        return Fraction(v)
    raise TypeError(f"cannot convert {v!r} to an exact rational")


class _ProjInf:
    """The single point at infinity of the real projective line."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "OO"


OO = _ProjInf()

#: extended endpoint type: Fraction, or None meaning the infinite endpoint
#: (-oo in a lower slot, +oo in an upper slot); projectively both are OO.
ProjPoint = Union[Fraction, _ProjInf]


def proj_eq(a: ProjPoint, b: ProjPoint) -> bool:
    if a is OO or b is OO:
        return a is OO and b is OO
    return a == b


def proj_rep(p: ProjPoint) -> Tuple[Fraction, Fraction]:
    """Homogeneous representative (X, W) with p = X/W; OO -> (1, 0)."""
    if p is OO:
        return Fraction(1), Fraction(0)
    return Fraction(p), Fraction(1)


# ---------------------------------------------------------------------------
# generic dense polynomials (ascending coefficients)
# ---------------------------------------------------------------------------

class Poly:
    """Univariate polynomial with exact rational coefficients, ascending order."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        cs = [rat(c) for c in coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        if not cs:
            cs = [Fraction(0)]
        self.coeffs = tuple(cs)

    # -- basics ------------------------------------------------------------
    @property
    def degree(self) -> int:
        if len(self.coeffs) == 1 and self.coeffs[0] == 0:
            return -1
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return self.degree < 0

    def __call__(self, z):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * z + (c if isinstance(z, Fraction) else float(c))
        return acc

    def derivative(self) -> "Poly":
        if len(self.coeffs) == 1:
            return Poly([0])
        return Poly([k * c for k, c in enumerate(self.coeffs)][1:])

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({[str(c) for c in self.coeffs]})"

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        b = list(other.coeffs) + [Fraction(0)] * (n - len(other.coeffs))
        return Poly([x + y for x, y in zip(a, b)])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + Poly([-c for c in other.coeffs])

    def __mul__(self, other):
        if isinstance(other, Poly):
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return Poly(out)
        s = rat(other)
        return Poly([c * s for c in self.coeffs])

    __rmul__ = __mul__

    # -- roots -------------------------------------------------------------
    def root_multiplicity(self, gamma: ProjPoint) -> int:
        """Exact multiplicity of gamma as a root; at OO it is 4 - degree
        relative to the weight-2 (quartic) homogenization used for A and B."""
        if self.is_zero():
            raise ValueError("zero polynomial has no well-defined multiplicity")
        if gamma is OO:
            if self.degree > 4:
                raise ValueError("A/B of degree > 4 have no weight-2 action")
            return 4 - self.degree
        g = rat(gamma)
        m = 0
        cs = list(self.coeffs)
        while True:
            # synthetic division by (z - g)
            quot = []
            acc = Fraction(0)
            for c in reversed(cs):
                acc = acc * g + c
                quot.append(acc)
            rem = quot.pop()
            if rem != 0:
                return m
            m += 1
            cs = list(reversed(quot))
            if not cs:
                return m


def poly_transport(p: Poly, m: "Mobius", weight: int) -> Poly:
    """Binary-form action: homogenize p to degree 2*weight, substitute the
    inverse map and divide by det^weight.  For weight 2 this realizes
    A~(x~) = A(x) * (dx~/dx)^2, for weight 1 it is q~(x~) = q(x) * dx~/dx."""
    deg = 2 * weight
    if p.degree > deg:
        raise ValueError(f"degree {p.degree} exceeds homogenization degree {deg}")
    det = m.det()
    u = Poly([-m.b, m.d])     # d*z - b
    v = Poly([m.a, -m.c])     # -c*z + a
    out = Poly([0])
    # powers of u and v
    upow = [Poly([1])]
    vpow = [Poly([1])]
    for _ in range(deg):
        upow.append(upow[-1] * u)
        vpow.append(vpow[-1] * v)
    for k, c in enumerate(p.coeffs):
        if c == 0:
            continue
        out = out + (upow[k] * vpow[deg - k]) * c
    scale = Fraction(1) / det ** weight
    return out * scale


# ---------------------------------------------------------------------------
# quadratics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Quadratic:
    """p(z) = c0*z^2 + 2*c1*z + c2 with its polarization p(x,y)."""

    c0: Fraction
    c1: Fraction
    c2: Fraction

    def __init__(self, c0, c1, c2):
        object.__setattr__(self, "c0", rat(c0))
        object.__setattr__(self, "c1", rat(c1))
        object.__setattr__(self, "c2", rat(c2))

    # -- evaluation --------------------------------------------------------
    def value(self, z):
        if isinstance(z, Fraction):
            return self.c0 * z * z + 2 * self.c1 * z + self.c2
        zf = float(z)
        return float(self.c0) * zf * zf + 2.0 * float(self.c1) * zf + float(self.c2)

    __call__ = value

    def polarize(self, x, y):
        """Symmetric bivariate form p(x,y) = c0*xy + c1*(x+y) + c2."""
        if isinstance(x, Fraction) and isinstance(y, Fraction):
            return self.c0 * x * y + self.c1 * (x + y) + self.c2
        xf, yf = float(x), float(y)
        return float(self.c0) * xf * yf + float(self.c1) * (xf + yf) + float(self.c2)

    def polarize_hom(self, X, W, Y, V):
        """Homogenized polarization numerator c0*XY + c1*(XV + YW) + c2*WV,
        defined for projective representatives (X:W), (Y:V)."""
        return self.c0 * X * Y + self.c1 * (X * V + Y * W) + self.c2 * W * V

    def dx_polarize(self, y):
        """Partial derivative of the polarization in its first slot: c0*y + c1."""
        if isinstance(y, Fraction):
            return self.c0 * y + self.c1
        return float(self.c0) * float(y) + float(self.c1)

    def derivative_value(self, z):
        if isinstance(z, Fraction):
            return 2 * self.c0 * z + 2 * self.c1
        return 2.0 * float(self.c0) * float(z) + 2.0 * float(self.c1)

    # -- structure ---------------------------------------------------------
    def coeffs(self) -> Tuple[Fraction, Fraction, Fraction]:
        return (self.c0, self.c1, self.c2)

    def is_zero(self) -> bool:
        return self.c0 == 0 and self.c1 == 0 and self.c2 == 0

    def as_poly(self) -> Poly:
        return Poly([self.c2, 2 * self.c1, self.c0])

    def scaled(self, s) -> "Quadratic":
        s = rat(s)
        return Quadratic(self.c0 * s, self.c1 * s, self.c2 * s)

    def plus(self, other: "Quadratic") -> "Quadratic":
        return Quadratic(self.c0 + other.c0, self.c1 + other.c1, self.c2 + other.c2)

    def is_multiple_of(self, other: "Quadratic") -> bool:
        """True iff self = s * other for some scalar s (other nonzero)."""
        if other.is_zero():
            return self.is_zero()
        a, b = self.coeffs(), other.coeffs()
        cross = [a[i] * b[j] - a[j] * b[i] for i in range(3) for j in range(i + 1, 3)]
        return all(c == 0 for c in cross)

    def double_root(self) -> Optional[ProjPoint]:
        """The double root in RP^1 if the quadratic is parabolic, else None."""
        if self.is_zero():
            return None
        d = self.c1 * self.c1 - self.c0 * self.c2
        if d != 0:
            return None
        if self.c0 == 0:
            # c1 = 0 too (else two distinct roots); constant: double root at OO
            return OO
        return -self.c1 / self.c0

    def __repr__(self):
        return f"Quadratic({self.c0}, {self.c1}, {self.c2})"


def polarize(p: Quadratic):
    """Return the symmetric bivariate evaluator of p."""
    return p.polarize


def inner(q: Quadratic, p: Quadratic) -> Fraction:
    """Signature (2,1) inner product 2*q1*p1 - q2*p0 - q0*p2."""
    return 2 * q.c1 * p.c1 - q.c2 * p.c0 - q.c0 * p.c2


PARABOLIC = "Parabolic"
HYPERBOLIC = "Hyperbolic"
ELLIPTIC = "Elliptic"


def conic_type(q: Quadratic) -> str:
    """Classify by root structure over RP^1 (degree drop = root at infinity):
    two distinct real roots -> Hyperbolic, a double root -> Parabolic,
    no real roots -> Elliptic."""
    if q.is_zero():
        raise ValueError("zero polynomial has no conic type")
    d = q.c1 * q.c1 - q.c0 * q.c2
    if d > 0:
        return HYPERBOLIC
    if d == 0:
        return PARABOLIC
    return ELLIPTIC


# ---------------------------------------------------------------------------
# quartics and the second transvectant
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Quartic:
    """R(z) = a4*z^4 + a3*z^3 + a2*z^2 + a1*z + a0."""

    a0: Fraction
    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction

    def __init__(self, a0, a1, a2, a3, a4):
        for name, v in zip("a0 a1 a2 a3 a4".split(), (a0, a1, a2, a3, a4)):
            object.__setattr__(self, name, rat(v))

    @classmethod
    def from_poly(cls, p: Poly) -> "Quartic":
        if p.degree > 4:
            raise ValueError("degree exceeds 4")
        cs = list(p.coeffs) + [Fraction(0)] * (5 - len(p.coeffs))
        return cls(*cs)

    def as_poly(self) -> Poly:
        return Poly([self.a0, self.a1, self.a2, self.a3, self.a4])

    def value(self, z):
        return self.as_poly()(z)

    __call__ = value


def transvectant2(p: Quadratic, R: Quartic) -> Quadratic:
    """The quadratic (p, R)^(2) = p*R'' - 3*p'*R' + 6*p''*R.

    The quartic and cubic coefficients of the combination cancel identically;
    the remainder is returned in the half-linear-coefficient convention."""
    pp = p.as_poly()
    rp = R.as_poly()
    r1 = rp.derivative()
    r2 = r1.derivative()
    p1 = pp.derivative()
    p2 = p1.derivative()
    total = pp * r2 - Poly([3]) * p1 * r1 + Poly([6]) * p2 * rp
    cs = list(total.coeffs) + [Fraction(0)] * (5 - len(total.coeffs))
    if any(c != 0 for c in cs[3:]):
        raise AssertionError("transvectant degree cancellation failed")
    return Quadratic(cs[2], cs[1] / 2, cs[0])


# ---------------------------------------------------------------------------
# Mobius maps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Mobius:
    """z -> (a*z + b) / (c*z + d) with exact rational entries, det != 0.

    Entries are stored as given; `canonical()` rescales them to a primitive
    integer representative with positive first nonzero entry, and
    `normalized()` returns float entries with |det| = 1 (the PSL2 class
    representative up to the global sign fixed by the same rule)."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __init__(self, a, b, c, d):
        a, b, c, d = rat(a), rat(b), rat(c), rat(d)
        if a * d - b * c == 0:
            raise ValueError("degenerate Mobius map")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    @classmethod
    def identity(cls) -> "Mobius":
        return cls(1, 0, 0, 1)

    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    def entries(self) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c, self.d)

    def canonical(self) -> "Mobius":
        from math import gcd
        nums = [e.numerator for e in self.entries()]
        dens = [e.denominator for e in self.entries()]
        lcm = 1
        for d in dens:
            lcm = lcm * d // gcd(lcm, d)
        ints = [int(e * lcm) for e in self.entries()]
        g = 0
        for v in ints:
            g = gcd(g, abs(v))
        ints = [v // g for v in ints]
        first = next(v for v in ints if v != 0)
        if first < 0:
            ints = [-v for v in ints]
        return Mobius(*ints)

    def normalized(self) -> Tuple[float, float, float, float]:
        s = 1.0 / math.sqrt(abs(float(self.det())))
        ent = [float(e) * s for e in self.entries()]
        first = next(v for v in ent if v != 0.0)
        if first < 0:
            ent = [-v for v in ent]
        return tuple(ent)

    def inverse(self) -> "Mobius":
        return Mobius(self.d, -self.b, -self.c, self.a)

    def compose(self, other: "Mobius") -> "Mobius":
        """self after other: (self @ other)(z) = self(other(z))."""
        a = self.a * other.a + self.b * other.c
        b = self.a * other.b + self.b * other.d
        c = self.c * other.a + self.d * other.c
        d = self.c * other.b + self.d * other.d
        return Mobius(a, b, c, d)

    def pole(self) -> ProjPoint:
        """The point mapped to infinity."""
        if self.c == 0:
            return OO
        return -self.d / self.c

    def apply(self, p: ProjPoint) -> ProjPoint:
        if p is OO:
            if self.c == 0:
                return OO
            return self.a / self.c
        p = rat(p)
        den = self.c * p + self.d
        if den == 0:
            return OO
        return (self.a * p + self.b) / den

    def apply_float(self, x: float) -> float:
        den = float(self.c) * x + float(self.d)
        return (float(self.a) * x + float(self.b)) / den

    def dz(self, x: float) -> float:
        """Derivative of the map at a finite point."""
        den = float(self.c) * x + float(self.d)
        return float(self.det()) / (den * den)


def transport_quadratic(q: Quadratic, m: Mobius) -> Quadratic:
    """Weight-1 binary action: q~(x~) = q(x) * dx~/dx."""
    out = poly_transport(q.as_poly(), m, weight=1)
    cs = list(out.coeffs) + [Fraction(0)] * (3 - len(out.coeffs))
    return Quadratic(cs[2], cs[1] / 2, cs[0])
