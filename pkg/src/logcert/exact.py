"""Exact arithmetic: rationals, dense univariate polynomials, rational functions
and eventual-sign certificates for polynomial inequalities over integers.

Rationals are plain :class:`fractions.Fraction` values.  They are always kept
reduced with a positive denominator, so equality is structural.
"""

from __future__ import annotations

import dataclasses
import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

Rational = Fraction
Scalar = Union[int, Fraction]


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def rational_cmp(x: Scalar, y: Scalar) -> Ordering:
    """Compare two rationals exactly by cross-multiplication."""
    x, y = Fraction(x), Fraction(y)
    d = x.numerator * y.denominator - y.numerator * x.denominator
    return Ordering((d > 0) - (d < 0))


def format_rational(q: Scalar) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(text))


class Polynomial:
    """Dense univariate polynomial with rational coefficients.

    ``coeffs[i]`` is the coefficient of ``n**i``.  Trailing zeros are stripped
    on construction, so the zero polynomial has an empty coefficient tuple.
    Instances are immutable.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def x(cls) -> "Polynomial":
        return cls((0, 1))

    @classmethod
    def const(cls, c: Scalar) -> "Polynomial":
        return cls((c,))

    @classmethod
    def coerce(cls, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return cls((other,))
        raise TypeError(f"cannot coerce {type(other).__name__} to Polynomial")

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        try:
            other = Polynomial.coerce(other)
        except TypeError:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Polynomial({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            if i == 0:
                body = str(mag)
            else:
                var = "n" if i == 1 else f"n^{i}"
                body = var if mag == 1 else f"{mag}*{var}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self.coeffs)

    def __add__(self, other) -> "Polynomial":
        try:
            other = Polynomial.coerce(other)
        except TypeError:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return Polynomial(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __sub__(self, other) -> "Polynomial":
        try:
            other = Polynomial.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return Polynomial.coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Polynomial.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("polynomial division by zero")
            return self.scale(Fraction(1) / Fraction(other))
        if isinstance(other, Polynomial):
            return RationalFunction(self, other)
        return NotImplemented

    def __rtruediv__(self, other):
        return RationalFunction(Polynomial.coerce(other), self)

    def scale(self, k: Scalar) -> "Polynomial":
        k = Fraction(k)
        return Polynomial(c * k for c in self.coeffs)

    def __call__(self, x: Scalar) -> Fraction:
        """Evaluate exactly by Horner's rule."""
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_int(self, n: int) -> Fraction:
        return self(n)

    def shift(self, k: int) -> "Polynomial":
        """Return P(n + k)."""
        step = Polynomial((k, 1))
        acc = Polynomial()
        for c in reversed(self.coeffs):
            acc = acc * step + c
        return acc

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.leading
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i] / lead
            if c == 0:
                continue
            quot[i - dq] = c
            for j, b in enumerate(other.coeffs):
                rem[i - dq + j] -= c * b
        return Polynomial(quot), Polynomial(rem[:dq])

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        return self.scale(1 / self.leading)

    def content_primitive(self) -> tuple[Fraction, "Polynomial"]:
        """Split into a positive rational content and a primitive integer polynomial."""
        if self.is_zero():
            return Fraction(1), self
        den = math.lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = math.gcd(*ints)
        return Fraction(g, den), Polynomial(i // g for i in ints)

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "Polynomial":
        return cls(parse_rational(s) for s in data)


def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Monic gcd by the Euclidean algorithm (zero if both are zero)."""
    while not q.is_zero():
        p, q = q, p.divmod(q)[1]
    return p.monic()


def poly_arith(op: str, p: Polynomial, q) -> Polynomial:
    """Dispatch form of the polynomial ring operations.

    ``op`` is one of ``add``, ``sub``, ``mul``, ``scale`` (q a rational) or
    ``compose_shift`` (q an integer shift k, result P(n + k)).
    """
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "scale":
        return p.scale(q)
    if op == "compose_shift":
        return p.shift(q)
    raise ValueError(f"unknown polynomial operation {op!r}")


def poly_eval(p: Polynomial, x: Scalar) -> Fraction:
    return p(x)


class RationalFunction:
    """Quotient of polynomials in lowest terms with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = Polynomial.coerce(num)
        den = Polynomial.coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = Polynomial(), Polynomial.const(1)
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num.divmod(g)[0], den.divmod(g)[0]
            lead = den.leading
            num, den = num.scale(1 / lead), den.scale(1 / lead)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @classmethod
    def coerce(cls, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return other
        return cls(Polynomial.coerce(other))

    def normalized(self) -> "RationalFunction":
        return RationalFunction(self.num, self.den)

    def __eq__(self, other) -> bool:
        try:
            other = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RationalFunction(({self.num}) / ({self.den}))"

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __add__(self, other) -> "RationalFunction":
        try:
            other = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other) -> "RationalFunction":
        try:
            other = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RationalFunction":
        return RationalFunction.coerce(other) - self

    def __mul__(self, other) -> "RationalFunction":
        try:
            other = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFunction":
        try:
            other = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        if other.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RationalFunction":
        return RationalFunction.coerce(other) / self

    def __pow__(self, k: int) -> "RationalFunction":
        if k < 0:
            return RationalFunction(1) / self ** (-k)
        return RationalFunction(self.num ** k, self.den ** k)

    def __call__(self, x: Scalar) -> Fraction:
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"denominator vanishes at {x}")
        return self.num(x) / d

    def shift(self, k: int) -> "RationalFunction":
        return RationalFunction(self.num.shift(k), self.den.shift(k))

    def limit_at_infinity(self) -> Optional[Fraction]:
        """Limit as n -> oo, or None when it diverges."""
        if self.num.degree < self.den.degree:
            return Fraction(0)
        if self.num.degree == self.den.degree:
            return self.num.leading / self.den.leading
        return None

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}


def ratfun_arith(op: str, f: RationalFunction, g) -> RationalFunction:
    """Dispatch form: ``add``, ``sub``, ``mul``, ``div`` or ``compose_shift`` (g an int)."""
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "div":
        return f / g
    if op == "compose_shift":
        return f.shift(g)
    raise ValueError(f"unknown rational-function operation {op!r}")


# --- sign certificates -----------------------------------------------------


class SignVerdict(enum.Enum):
    ALL_POSITIVE = "AllPositive"
    ALL_NONNEGATIVE = "AllNonnegative"
    ALL_NEGATIVE = "AllNegative"
    ALL_NONPOSITIVE = "AllNonpositive"
    FAILS = "Fails"


class Justification(enum.Enum):
    LEADING_COEFFICIENT_TAIL = "LeadingCoefficientTail"
    EXHAUSTIVE_SCAN = "ExhaustiveScan"


@dataclass(frozen=True)
class SignCertificate:
    polynomial: Polynomial
    threshold: int
    verdict: SignVerdict
    scan_bound: int
    justification: Justification
    strict: bool
    witness: Optional[int] = None
    witness_value: Optional[Fraction] = None

    @property
    def sign(self) -> int:
        """+1 / -1 for a blanket verdict, 0 for Fails."""
        if self.verdict in (SignVerdict.ALL_POSITIVE, SignVerdict.ALL_NONNEGATIVE):
            return 1
        if self.verdict in (SignVerdict.ALL_NEGATIVE, SignVerdict.ALL_NONPOSITIVE):
            return -1
        return 0

    def proves(self, sign: int) -> bool:
        return self.sign == sign

    def to_json(self) -> dict:
        out = {
            "polynomial": self.polynomial.to_json(),
            "threshold": self.threshold,
            "verdict": self.verdict.value,
            "scan_bound": self.scan_bound,
            "justification": self.justification.value,
            "strict": self.strict,
        }
        if self.witness is not None:
            out["witness"] = self.witness
            out["witness_value"] = format_rational(self.witness_value)
        return out


def eventual_sign_bound(p: Polynomial) -> int:
    """Smallest integer N0 >= 0 at or above the Cauchy root bound of ``p``.

    Every root has modulus strictly below ``1 + max |a_i / a_d|``, so for
    integers n >= N0 the sign of p(n) is the sign of the leading coefficient.
    """
    if p.is_zero():
        raise ValueError("the zero polynomial has no eventual sign")
    if p.degree == 0:
        return 0
    lead = abs(p.leading)
    bound = 1 + max(abs(c) / lead for c in p.coeffs[:-1])
    return max(0, math.ceil(bound))


def sign_for_all_n_geq(p: Polynomial, n0: int, strict: bool = True) -> SignCertificate:
    """Certify the sign of p(n) for every integer n >= n0.

    Evaluates p exactly on ``[n0, max(n0, eventual_sign_bound(p))]``; beyond
    that the leading coefficient decides.  The blanket verdict follows the
    leading sign; any disagreeing point yields ``FAILS`` with the smallest
    witness.
    """
    if p.is_zero():
        raise ValueError("sign certificate requested for the zero polynomial")
    bound = eventual_sign_bound(p)
    top = max(n0, bound)
    lead_sign = 1 if p.leading > 0 else -1
    for n in range(n0, top + 1):
        v = p(n)
        bad = v * lead_sign < 0 or (strict and v == 0)
        if bad:
            return SignCertificate(p, n0, SignVerdict.FAILS, n, Justification.EXHAUSTIVE_SCAN,
                                   strict, witness=n, witness_value=v)
    if lead_sign > 0:
        verdict = SignVerdict.ALL_POSITIVE if strict else SignVerdict.ALL_NONNEGATIVE
    else:
        verdict = SignVerdict.ALL_NEGATIVE if strict else SignVerdict.ALL_NONPOSITIVE
    just = Justification.EXHAUSTIVE_SCAN if top > n0 else Justification.LEADING_COEFFICIENT_TAIL
    return SignCertificate(p, n0, verdict, top, just, strict)


def ratfun_sign_for_all_n_geq(f: RationalFunction, n0: int, strict: bool = True) -> SignCertificate:
    """Sign certificate for a rational function on integers n >= n0.

    sign(num/den) = sign(num*den) wherever den != 0; the denominator is
    certified nonvanishing via den**2 > 0.  If it vanishes somewhere the
    certificate fails at that point.
    """
    den_sq = sign_for_all_n_geq(f.den * f.den, n0, strict=True)
    if den_sq.verdict is SignVerdict.FAILS:
        return den_sq
    cert = sign_for_all_n_geq(f.num * f.den, n0, strict)
    if cert.witness is not None:
        # report the value of f itself, which has the same sign as num*den
        cert = dataclasses.replace(cert, witness_value=f(cert.witness))
    return cert


# --- quadratic root-interval membership -------------------------------------


class RootInterval(enum.Enum):
    INSIDE = "Inside"
    OUTSIDE = "Outside"
    ON_BOUNDARY = "OnBoundary"


class PreconditionError(ValueError):
    """An operation's input violated a stated precondition."""


def in_quadratic_root_interval(a: Polynomial, b: Polynomial, c: Polynomial,
                               n: int, q: Scalar) -> RootInterval:
    """Decide X(n) <= q <= Y(n) for the roots of a(n) t^2 + b(n) t + c(n).

    Radical free: with a(n) > 0, q lies between the roots iff the quadratic
    is nonpositive at q.
    """
    an, bn, cn = a(n), b(n), c(n)
    if an <= 0:
        raise PreconditionError(f"a({n}) = {format_rational(an)} is not positive")
    disc = bn * bn - 4 * an * cn
    if disc < 0:
        raise PreconditionError(f"discriminant at n={n} is negative ({format_rational(disc)})")
    val = (an * q + bn) * q + cn
    if val < 0:
        return RootInterval.INSIDE
    if val == 0:
        return RootInterval.ON_BOUNDARY
    return RootInterval.OUTSIDE


def rational_roots_quadratic(p: Polynomial) -> Optional[tuple[Fraction, Fraction]]:
    """Both roots of a degree-2 polynomial when they are rational, sorted; else None."""
    if p.degree != 2:
        raise ValueError("expected a quadratic")
    c, b, a = p.coeffs
    disc = b * b - 4 * a * c
    if disc < 0:
        return None
    num, den = disc.numerator, disc.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn != num or rd * rd != den:
        return None
    root = Fraction(rn, rd)
    r1, r2 = (-b - root) / (2 * a), (-b + root) / (2 * a)
    return (min(r1, r2), max(r1, r2))
