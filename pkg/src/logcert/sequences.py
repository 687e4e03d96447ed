"""Exact values of S_n, f_n and u_n = 4 n S_n, the polynomial-coefficient
recurrences they satisfy, and the quotient tables used by the log-behavior
checkers.

    S_n = sum_k C(n,k)^2 C(2k,k) (2k+1)
    f_n = sum_k C(2k,k)/(k+1) * (6k C(n,k)^2 + C(n,k) C(n,k+1))
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Union

from .exact import Polynomial, format_rational

Number = Union[int, Fraction]


class CertificationError(ArithmeticError):
    """A computed value contradicts what the certification expects."""

    def __init__(self, message: str, index: Optional[int] = None):
        super().__init__(message)
        self.index = index


class Provenance(enum.Enum):
    DIRECT_SUM = "DirectSum"
    RECURRENCE = "Recurrence"
    INJECTED = "Injected"


def binomial(n: int, k: int) -> int:
    if n < 0:
        raise ValueError("binomial requires n >= 0")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def binomial_row(n: int) -> list[int]:
    """[C(n,0), ..., C(n,n)] by the multiplicative recurrence."""
    if n < 0:
        raise ValueError("binomial requires n >= 0")
    row = [1] * (n + 1)
    for k in range(1, n + 1):
        row[k] = row[k - 1] * (n - k + 1) // k
    return row


def central_binomials(upto: int) -> list[int]:
    """[C(0,0), C(2,1), ..., C(2 upto, upto)]."""
    out = [1] * (upto + 1)
    for k in range(1, upto + 1):
        out[k] = out[k - 1] * 2 * (2 * k - 1) // k
    return out


def compute_S(n: int) -> int:
    if n < 0:
        raise ValueError("S_n is defined for n >= 0")
    row = binomial_row(n)
    cen = central_binomials(n)
    return sum(row[k] * row[k] * cen[k] * (2 * k + 1) for k in range(n + 1))


def compute_f(n: int) -> int:
    """f_n summed over the rationals as written, then checked to be an integer.

    Terms are brought to the common denominator lcm(1..n+1) before adding.
    """
    if n < 0:
        raise ValueError("f_n is defined for n >= 0")
    row = binomial_row(n) + [0]
    cen = central_binomials(n)
    den = math.lcm(*range(1, n + 2))
    num = 0
    for k in range(n + 1):
        num += den // (k + 1) * cen[k] * (6 * k * row[k] * row[k] + row[k] * row[k + 1])
    total = Fraction(num, den)
    if total.denominator != 1:
        raise CertificationError(f"f_{n} = {format_rational(total)} is not an integer", n)
    return total.numerator


def compute_u(n: int) -> int:
    return 4 * n * compute_S(n)


def check_guo_liu_identity(n: int) -> bool:
    """4 n S_n == (n+1)^2 f_n - n^2 f_{n-1}; at n = 0 both sides reduce to f_0 = 0."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    rhs = (n + 1) ** 2 * compute_f(n) - (n * n * compute_f(n - 1) if n > 0 else 0)
    return 4 * n * compute_S(n) == rhs


# --- tables -------------------------------------------------------------------


@dataclass(frozen=True)
class SequenceTable:
    """Exact values of a sequence over a contiguous index range.

    Treated as immutable: derive modified copies with :meth:`with_value`.
    """

    name: str
    values: Mapping[int, Number]
    provenance: Mapping[int, Provenance] = field(default_factory=dict)

    @classmethod
    def from_values(cls, name: str, values: Iterable[Number], start: int = 0,
                    provenance: Provenance = Provenance.DIRECT_SUM) -> "SequenceTable":
        vals = {start + i: v for i, v in enumerate(values)}
        return cls(name, vals, {i: provenance for i in vals})

    @property
    def lo(self) -> int:
        return min(self.values)

    @property
    def hi(self) -> int:
        return max(self.values)

    def __getitem__(self, n: int) -> Number:
        try:
            return self.values[n]
        except KeyError:
            raise IndexError(f"{self.name} table has no index {n} "
                             f"(covers {self.lo}..{self.hi})") from None

    def __contains__(self, n: int) -> bool:
        return n in self.values

    def __len__(self) -> int:
        return len(self.values)

    def covers(self, lo: int, hi: int) -> bool:
        return all(n in self.values for n in range(lo, hi + 1))

    def require(self, lo: int, hi: int) -> None:
        missing = [n for n in range(lo, hi + 1) if n not in self.values]
        if missing:
            raise IndexError(f"{self.name} table is missing index {missing[0]} "
                             f"(needs {lo}..{hi})")

    def with_value(self, n: int, value: Number,
                   provenance: Provenance = Provenance.INJECTED) -> "SequenceTable":
        vals = dict(self.values)
        prov = dict(self.provenance)
        vals[n] = value
        prov[n] = provenance
        return SequenceTable(self.name, vals, prov)

    def items(self):
        return sorted(self.values.items())

    def to_csv(self, lo: Optional[int] = None, hi: Optional[int] = None) -> str:
        lo = self.lo if lo is None else lo
        hi = self.hi if hi is None else hi
        lines = ["n,value"]
        for n in range(lo, hi + 1):
            lines.append(f"{n},{_format_value(self[n])}")
        return "\n".join(lines) + "\n"

    def to_json(self, lo: Optional[int] = None, hi: Optional[int] = None) -> dict:
        lo = self.lo if lo is None else lo
        hi = self.hi if hi is None else hi
        return {
            "name": self.name,
            "range": [lo, hi],
            "values": [
                {"n": n, "value": _format_value(self[n]),
                 "provenance": self.provenance.get(n, Provenance.DIRECT_SUM).value}
                for n in range(lo, hi + 1)
            ],
        }


def _format_value(v: Number) -> str:
    if isinstance(v, Fraction) and v.denominator != 1:
        return format_rational(v)
    return str(int(v))


def build_table(name: str, hi: int, lo: int = 0) -> SequenceTable:
    """Direct-sum table for ``S``, ``f`` or ``u`` on ``[lo, hi]``."""
    funcs = {"S": compute_S, "f": compute_f, "u": compute_u}
    try:
        func = funcs[name]
    except KeyError:
        raise ValueError(f"unknown sequence {name!r}; expected one of S, f, u") from None
    if lo < 0 or hi < lo:
        raise ValueError(f"invalid range {lo}..{hi}")
    return SequenceTable.from_values(name, (func(n) for n in range(lo, hi + 1)), start=lo)


def u_table_from(S: SequenceTable) -> SequenceTable:
    vals = {n: 4 * n * v for n, v in S.values.items()}
    return SequenceTable("u", vals, dict(S.provenance))


@dataclass(frozen=True)
class QuotientTable:
    base: str
    quotients: Mapping[int, Fraction]

    @property
    def lo(self) -> int:
        return min(self.quotients)

    @property
    def hi(self) -> int:
        return max(self.quotients)

    def __getitem__(self, n: int) -> Fraction:
        try:
            return self.quotients[n]
        except KeyError:
            raise IndexError(f"quotient table of {self.base} has no index {n} "
                             f"(covers {self.lo}..{self.hi})") from None

    def __contains__(self, n: int) -> bool:
        return n in self.quotients

    def require(self, lo: int, hi: int) -> None:
        for n in range(lo, hi + 1):
            if n not in self.quotients:
                raise IndexError(f"quotient table of {self.base} is missing index {n} "
                                 f"(needs {lo}..{hi})")

    def as_table(self) -> SequenceTable:
        """View the quotients themselves as a (rational-valued) sequence."""
        return SequenceTable(f"{self.base}_ratio", dict(self.quotients))


def quotients(table: SequenceTable) -> QuotientTable:
    """q_n = z_n / z_{n-1} for every n with both indices present."""
    require_positive(table)
    q = {}
    for n in range(table.lo + 1, table.hi + 1):
        q[n] = Fraction(table[n]) / Fraction(table[n - 1])
    return QuotientTable(table.name, q)


def require_positive(table: SequenceTable, lo: Optional[int] = None,
                     hi: Optional[int] = None) -> None:
    lo = table.lo if lo is None else lo
    hi = table.hi if hi is None else hi
    for n in range(lo, hi + 1):
        if n in table.values and table.values[n] <= 0:
            raise ValueError(f"{table.name}_{n} = {table.values[n]} is not positive; "
                             "log-behavior criteria require a positive sequence")


# --- recurrences --------------------------------------------------------------


@dataclass(frozen=True)
class RecurrenceRelation:
    """sum_{i=0}^{r} coeffs[i](n) * z_{n + offset + i} = 0 for n >= n_min."""

    name: str
    coeffs: tuple[Polynomial, ...]
    n_min: int
    offset: int = 0

    def __post_init__(self):
        if len(self.coeffs) < 2 or self.coeffs[-1].is_zero():
            raise ValueError("a recurrence needs at least two coefficients and a nonzero leading one")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def indices(self, n: int) -> range:
        start = n + self.offset
        return range(start, start + self.order + 1)

    def to_json(self) -> dict:
        return {"name": self.name, "order": self.order, "n_min": self.n_min,
                "offset": self.offset, "coeffs": [c.to_json() for c in self.coeffs]}


def recurrence_residual(rec: RecurrenceRelation, table: SequenceTable, n: int) -> Fraction:
    if n < rec.n_min:
        raise ValueError(f"{rec.name} is only asserted for n >= {rec.n_min}")
    idx = rec.indices(n)
    table.require(idx.start, idx.stop - 1)
    return sum((c(n) * table[k] for c, k in zip(rec.coeffs, idx)), Fraction(0))


def first_nonzero_residual(rec: RecurrenceRelation, table: SequenceTable,
                           lo: int, hi: int) -> Optional[tuple[int, Fraction]]:
    for n in range(lo, hi + 1):
        r = recurrence_residual(rec, table, n)
        if r != 0:
            return n, r
    return None


def extend_by_recurrence(rec: RecurrenceRelation, initials: SequenceTable,
                         upto: int) -> SequenceTable:
    """Unroll ``rec`` forward from the top of ``initials`` up to index ``upto``.

    New values must come out as exact positive integers; anything else raises
    :class:`CertificationError` carrying the offending index.
    """
    if upto <= initials.hi:
        return initials
    vals = dict(initials.values)
    prov = dict(initials.provenance)
    for target in range(initials.hi + 1, upto + 1):
        n = target - rec.order - rec.offset
        if n < rec.n_min:
            raise ValueError(f"{rec.name} cannot produce index {target}: needs n >= {rec.n_min}")
        idx = rec.indices(n)
        for k in idx[:-1]:
            if k not in vals:
                raise IndexError(f"initial values must include index {k}")
        lead = rec.coeffs[-1](n)
        if lead == 0:
            raise CertificationError(f"leading coefficient of {rec.name} vanishes at n={n}", target)
        acc = sum((c(n) * vals[k] for c, k in zip(rec.coeffs[:-1], idx[:-1])), Fraction(0))
        value = -acc / lead
        if value.denominator != 1:
            raise CertificationError(
                f"{rec.name}: {initials.name}_{target} = {format_rational(value)} is not an integer",
                target)
        if value <= 0:
            raise CertificationError(f"{rec.name}: {initials.name}_{target} = {value} is not positive",
                                     target)
        vals[target] = value.numerator
        prov[target] = Provenance.RECURRENCE
    return SequenceTable(initials.name, vals, prov)


def first_mismatch(a: SequenceTable, b: SequenceTable) -> Optional[int]:
    common = sorted(set(a.values) & set(b.values))
    for n in common:
        if a[n] != b[n]:
            return n
    return None


N = Polynomial.x()

#: 9(n+1)^2 S_n - (19n^2+74n+87) S_{n+1} + (n+3)(11n+29) S_{n+2} - (n+3)^2 S_{n+3} = 0
S_FOUR_TERM = RecurrenceRelation(
    "S four-term",
    (9 * (N + 1) ** 2,
     -(19 * N ** 2 + 74 * N + 87),
     (N + 3) * (11 * N + 29),
     -(N + 3) ** 2),
    n_min=0,
)

#: c(n) S_{n-1} + b(n) S_n + a(n) S_{n+1} = 0, indexed so that n is the middle term.
S_A = (N + 1) ** 2 * (4 * N - 1) * (4 * N + 3)
S_B = -(4 * N - 1) * (4 * N + 7) * (10 * N ** 2 + 10 * N + 3)
S_C = 9 * N ** 2 * (4 * N + 3) * (4 * N + 7)
S_THREE_TERM = RecurrenceRelation("S three-term", (S_C, S_B, S_A), n_min=1, offset=-1)

U_ORDER_THREE = RecurrenceRelation(
    "u order-3",
    (-9 * (N + 1) ** 3 * (N + 2),
     N * (N + 2) * (19 * N ** 2 + 74 * N + 87),
     -N * (N + 1) * (N + 3) * (11 * N + 29),
     N * (N + 1) * (N + 2) * (N + 3)),
    n_min=1,
)

_V_QUARTIC = 128 * N ** 4 + 864 * N ** 3 + 2016 * N ** 2 + 1994 * N + 693
V_ORDER_THREE = RecurrenceRelation(
    "v order-3",
    (-9 * (N + 1) ** 2 * (128 * N ** 4 + 1376 * N ** 3 + 5376 * N ** 2 + 9130 * N + 5695),
     Polynomial([106920, 384657, 550013, 399646, 155712, 30880, 2432]),
     -Polynomial([59535, 215886, 309049, 225582, 88512, 17696, 1408]),
     (N + 2) * (N + 3) * _V_QUARTIC),
    n_min=1,
)

U_ORDER_TWO = RecurrenceRelation(
    "u order-2",
    (9 * (N + 1) ** 3 * (4 * N + 11) * (4 * N + 7),
     -N * (4 * N + 3) * (4 * N + 11) * (10 * N ** 2 + 30 * N + 23),
     N * (N + 1) * (N + 2) * (4 * N + 3) * (4 * N + 7)),
    n_min=1,
)

RECURRENCES = {
    rec.name: rec for rec in (S_FOUR_TERM, S_THREE_TERM, U_ORDER_THREE, V_ORDER_THREE, U_ORDER_TWO)
}


def dump_table(table: SequenceTable, fmt: str, lo: Optional[int] = None,
               hi: Optional[int] = None) -> str:
    if fmt == "csv":
        return table.to_csv(lo, hi)
    if fmt == "json":
        return json.dumps(table.to_json(lo, hi), indent=2) + "\n"
    if fmt == "text":
        lo = table.lo if lo is None else lo
        hi = table.hi if hi is None else hi
        return "".join(f"{table.name}_{n} = {_format_value(table[n])}\n" for n in range(lo, hi + 1))
    raise ValueError(f"unsupported format {fmt!r}")
