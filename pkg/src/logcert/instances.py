"""Concrete polynomials and rational functions attached to S_n.

Printed forms are kept verbatim (``*_PRINTED``) next to the forms derived
from the recurrence, so that claims can compare the two exactly.
"""

from fractions import Fraction

from .criteria import BoundFunction
from .exact import Polynomial, RationalFunction
from .sequences import S_A, S_B, S_C

n = Polynomial.x()
R = RationalFunction.coerce


def P(*coeffs_high_to_low) -> Polynomial:
    return Polynomial(reversed(coeffs_high_to_low))


# a(n) S_{n+1} + b(n) S_n + c(n) S_{n-1} = 0
A, B_REC, C_REC = S_A, S_B, S_C
DISCRIMINANT = B_REC * B_REC - 4 * A * C_REC
DISCRIMINANT_PRINTED = P(16384, 81920, 143360, 101888, 19328, -13120, -6884, -84, 441)
#: the polynomial called B(n) in the upper-bound induction; equal to the discriminant
B_PRINTED = DISCRIMINANT_PRINTED
#: C(n) in the same argument, equal to the discriminant at n + 1
C_PRINTED = P(16384, 212992, 1175552, 3599872, 6693248, 7734976, 5418076, 2098212, 343233)
#: radicand factorization: discriminant = (4n-1)(4n+7) * SEXTIC
SEXTIC_PRINTED = P(1024, 3584, 4032, 1888, 140, -204, -63)

SQRT_B_UPPER = P(128, 320, 160, -2, 0)
SQRT_C_LOWER = P(128, 832, 1888, 1790, 0)
SQUARE_GAP_B_PRINTED = P(4992, 12480, 6888, 84, -441)
SQUARE_GAP_C_PRINTED = P(-150144, -975936, -2213976, -2098212, -343233)

#: delta_n = [RATIONAL_PART - SQRT_B_COEFF sqrt(B) + SQRT_C_COEFF sqrt(C)] / DELTA_DEN
DELTA_RATIONAL_PRINTED = 9 * (4 * n - 1) * P(16, 58, 64, 19)
DELTA_SQRT_B_COEFF = P(4, 23, 44, 28)
DELTA_SQRT_C_COEFF = P(4, 7, 2, -1)
DELTA_DEN = 2 * (n + 1) ** 2 * (n + 2) ** 2 * (4 * n - 1) * (4 * n + 3) * (4 * n + 7)
COMBINATION_PRINTED = P(1152, 1464, -918, -1626, -171)

#: quotient recurrence s_{n+1} = RATIO_CONST(n) - RATIO_COEF(n) / s_n
RATIO_CONST_PRINTED = R((4 * n + 7) * (10 * n ** 2 + 10 * n + 3)) / ((n + 1) ** 2 * (4 * n + 3))
RATIO_COEF_PRINTED = R(9 * n ** 2 * (4 * n + 7)) / ((n + 1) ** 2 * (4 * n - 1))

#: lower companion of the root interval as printed
L_PRINTED = R((4 * n + 7) * (10 * n ** 2 + 10 * n + 3)) / (2 * n * (n + 1) ** 2 * (4 * n + 3))
#: -b(n) / (2 a(n)), the midpoint of the root interval
ROOT_MIDPOINT = R(-B_REC) / (2 * A)

H = 9 - R(Fraction(9, 2)) / (n * n)
H_BOUND = BoundFunction(H, 1)

UPPER_STEP_PRINTED = (R(4 * n + 7) / (n + 1) ** 2) * (
    R(P(72, 54, -36, -36, -2, 3)) / ((4 * n - 1) * (4 * n + 3) * (2 * n ** 2 - 1)))
UPPER_GAP_PRINTED = R(P(-88, -40, 15)) / (2 * (n + 1) ** 2 * (4 * n - 1) * (4 * n + 3) * (2 * n ** 2 - 1))
LOWER_STEP_PRINTED = R((4 * n + 7) * P(72, -90, -72, 10, 14, -3)) / (
    (n + 1) ** 2 * (4 * n - 1) * (4 * n + 3) * (2 * n ** 2 - 4 * n + 1))
LOWER_GAP_PRINTED = R(P(512, -792, -728, 147, 126, -27)) / (
    2 * n ** 2 * (n + 1) ** 2 * (4 * n - 1) * (4 * n + 3) * (2 * n ** 2 - 4 * n + 1))


def step_bound(bound_at_n: RationalFunction) -> RationalFunction:
    """The recurrence step with s_n replaced by a bound: RATIO_CONST - RATIO_COEF / bound."""
    return RATIO_CONST_PRINTED - RATIO_COEF_PRINTED / bound_at_n


# z_n = u(n) z_{n-1} + v(n) z_{n-2}, obtained by shifting the three-term recurrence
U_DERIVED = R(-B_REC.shift(-1)) / A.shift(-1)
V_DERIVED = R(-C_REC.shift(-1)) / A.shift(-1)
U_PRINTED = R((4 * n + 3) * (10 * n ** 2 - 10 * n + 3)) / (n ** 2 * (4 * n - 1))
#: printed without the minus sign; the criterion needs v(n) < 0
V_PRINTED_MAGNITUDE = R(9 * (n - 1) ** 2 * (4 * n + 3)) / (n ** 2 * (4 * n - 5))
V_NORMALIZED = -V_PRINTED_MAGNITUDE

D_PRINTED = P(331776, -393984, -693360, 524232, 581256, -242028, -223803, 39366, 32805)
CGW_II_PRINTED = R(-D_PRINTED) / (16 * n ** 8 * (n + 1) ** 2 * (4 * n - 5) * (4 * n - 1))
LOWER_CGW_PRINTED = R(-3 * P(8, -18, 6, -41, 36, -9)) / (4 * n ** 2 * (n - 1) ** 2 * (4 * n - 1))

LIMIT_QUADRATIC_PRINTED = P(1, -10, 9)
#: sixth-power gap at the n = 2 base case of n-th-root log-concavity
ROOT_BASE_GAP_PRINTED = Fraction(89679424, 782954095)
X1_PRINTED, Y1_PRINTED = "1.03059", "8.00512"
