"""Published reference values for the three worked tetrahedra (regular, plane, quadrangular).

Each entry records labels, the Cayley-Menger determinant, the growth rates and the
first six normalized series coefficients mu_1..mu_6 of every branch.
"""

from fractions import Fraction as F

from .quadnum import QuadNum


def _q(p, q, m):
    return QuadNum(F(p), F(q), m)


EUCLIDEAN_LABELS = (2, 2, 2, 2, 2, 2)
PLANE_LABELS = (3, 4, 4, 3, 5, 5)
MINKOWSKIAN_LABELS = (4, 4, 4, 4, 6, 6)

DETERMINANTS = {EUCLIDEAN_LABELS: F(32), PLANE_LABELS: F(0), MINKOWSKIAN_LABELS: F(-2592)}


def _pm(rows, m, sign):
    """rows of (p, q, den): value (p + sign*q*sqrt(m)) / den."""
    return [QuadNum(F(p, d), F(sign * q, d), m) for p, q, d in rows]


# mu_l = (p +- q i sqrt 2)/den for branch a_+ (upper sign) and a_- (lower sign)
_EUC = [(-432, 31, 576), (109847, -22320, 331776), (-18649008, 4914305, 573308928),
        (14721750481, 45578388960, 660451885056),
        (-83614134803760, 7532932167923, 380420285792256),
        (-31784729861796581, -212040612888146640, 657366253849018368)]

_MIN = [(336, 1369, 4032), (1769489, 831792, 1806336), (67925105712, 66827896993, 21849440256),
        (5075437500833257, 2589265090380768, 176193886224384),
        (100978405759997442992, 98904713360431641651, 552544027199668224),
        (685103512739058526758457, 349782631602887151717776, 247539724185451364352)]

EUCLIDEAN = {
    "+": {"Lambda": QuadNum(F(329, 729), F(-460, 729), -2), "alpha": F(-3, 2),
          "mu": [QuadNum(1)] + _pm(_EUC, -2, 1)},
    "-": {"Lambda": QuadNum(F(329, 729), F(460, 729), -2), "alpha": F(-3, 2),
          "mu": [QuadNum(1)] + _pm(_EUC, -2, -1)},
}

PLANE = {
    "+": {"Lambda": QuadNum(-1), "alpha": F(-4, 3),
          "mu": [QuadNum(x) for x in (F(1), F(-1, 3), F(3713, 46656), F(-25427, 2239488),
                                      F(9063361, 17414258688), F(-109895165, 104485552128),
                                      F(1927530983327, 2437438960041984))]},
    "-": {"Lambda": QuadNum(-1), "alpha": F(-5, 3),
          "mu": [QuadNum(x) for x in (F(1), F(-37, 96), F(3883, 46656), F(-13129, 4478976),
                                      F(-5700973, 8707129344), F(-14855978561, 3343537668096),
                                      F(2862335448661, 2437438960041984))]},
}

# c_+ carries the minus sign on sqrt 2 and the growth rate of modulus < 1
MINKOWSKIAN = {
    "+": {"Lambda": QuadNum(F(696321931873, 678223072849), F(-111529584108, 678223072849), 2),
          "alpha": F(-3, 2), "mu": [QuadNum(1)] + _pm(_MIN, 2, -1)},
    "-": {"Lambda": QuadNum(F(696321931873, 678223072849), F(111529584108, 678223072849), 2),
          "alpha": F(-3, 2), "mu": [QuadNum(1)] + _pm(_MIN, 2, 1)},
}

MINKOWSKIAN_LAMBDA_FLOAT = 0.794127

BRANCHES = {EUCLIDEAN_LABELS: EUCLIDEAN, PLANE_LABELS: PLANE, MINKOWSKIAN_LABELS: MINKOWSKIAN}

# Stokes constant of the plane example from its single closed formula
PLANE_STOKES_PUBLISHED = 0.124155


def closed_sequence(labels, n):
    """Closed hypergeometric forms of the U-normalized scaled 6j for the three examples."""
    from math import factorial as fa
    if labels == EUCLIDEAN_LABELS:
        pre = F(fa(n) ** 6, fa(3 * n + 1) ** 2)
        s = sum((-1) ** k * fa(k + 1) * F(1, fa(k - 3 * n) ** 4 * fa(4 * n - k) ** 3)
                for k in range(3 * n, 4 * n + 1))
    elif labels == PLANE_LABELS:
        pre = F(fa(n) ** 2 * fa(2 * n) ** 2 * fa(3 * n) ** 2, fa(6 * n + 1) ** 2)
        s = sum((-1) ** k * fa(k + 1) * F(1, fa(k - 6 * n) ** 4 * fa(7 * n - k) * fa(8 * n - k) * fa(9 * n - k))
                for k in range(6 * n, 7 * n + 1))
    elif labels == MINKOWSKIAN_LABELS:
        pre = F(fa(n) ** 2 * fa(3 * n) ** 4, fa(7 * n + 1) ** 2)
        s = sum((-1) ** k * fa(k + 1) * F(1, fa(k - 7 * n) ** 4 * fa(8 * n - k) * fa(10 * n - k) ** 2)
                for k in range(7 * n, 8 * n + 1))
    else:
        raise KeyError(labels)
    return pre * s
