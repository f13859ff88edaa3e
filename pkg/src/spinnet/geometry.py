"""Geometry of the dual tetrahedron: Cayley-Menger data, angles, variational equation."""

from dataclasses import dataclass
from fractions import Fraction
import mpmath

from .errors import DegenerateError, ParseError
from .quadnum import QuadNum, squarefree_split

EUCLIDEAN, PLANE, MINKOWSKIAN = "Euclidean", "Plane", "Minkowskian"

# (a, b, c, d, e, f) = (d12, d23, d14, d34, d13, d24)
EDGE_PAIRS = ((1, 2), (2, 3), (1, 4), (3, 4), (1, 3), (2, 4))


def tet_labels(values):
    vals = tuple(Fraction(x) for x in values)
    if len(vals) != 6:
        raise ParseError("a tetrahedron needs six labels (a, b, c, d, e, f)")
    if any(x < 0 for x in vals):
        raise ParseError("labels must be nonnegative")
    return vals


def faces(labels):
    """Edge-label triples of the four triangles (= vertices of the spin network)."""
    a, b, c, d, e, f = labels
    return (a, b, e), (a, c, f), (c, d, e), (b, d, f)


def is_degenerate(labels):
    """True unless every face satisfies the strict triangle inequalities."""
    return any(not (x < y + z and y < x + z and z < x + y) for x, y, z in faces(labels))


def det_exact(M):
    """Determinant of a square matrix of Fractions by Gaussian elimination."""
    M = [[Fraction(x) for x in row] for row in M]
    n, det = len(M), Fraction(1)
    for i in range(n):
        piv = next((r for r in range(i, n) if M[r][i] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != i:
            M[i], M[piv] = M[piv], M[i]
            det = -det
        det *= M[i][i]
        for r in range(i + 1, n):
            if M[r][i]:
                f = M[r][i] / M[i][i]
                M[r] = [x - f * y for x, y in zip(M[r], M[i])]
    return det


def _drop(M, rows, cols):
    return [[x for j, x in enumerate(r) if j not in cols] for i, r in enumerate(M) if i not in rows]


@dataclass(frozen=True)
class CayleyMengerData:
    labels: tuple
    matrix: tuple
    det: Fraction
    cls: str
    degenerate: bool

    @property
    def volume(self):
        """Vol = (1/6) sqrt|det C| as a QuadNum."""
        s, m = squarefree_split(abs(self.det))
        return QuadNum(0, s / 6, m) if m != 1 else QuadNum(s / 6)

    def adjugate(self, k, l):
        return (-1) ** (k + l) * det_exact(_drop(self.matrix, {k}, {l}))

    def minor_kkll(self, k, l):
        return det_exact(_drop(self.matrix, {k, l}, {k, l}))


def cayley_menger(labels):
    labels = tet_labels(labels)
    d = {}
    for (i, j), x in zip(EDGE_PAIRS, labels):
        d[(i, j)] = d[(j, i)] = x
    C = [[0] * 5 for _ in range(5)]
    for i in range(5):
        for j in range(5):
            if i == 0 or j == 0:
                C[i][j] = Fraction((i > j) - (i < j))
            elif i == j:
                C[i][j] = Fraction(1)
            else:
                C[i][j] = 1 - d[(i, j)] ** 2 / 2
    det = det_exact(C)
    cls = EUCLIDEAN if det > 0 else PLANE if det == 0 else MINKOWSKIAN
    return CayleyMengerData(labels, tuple(tuple(r) for r in C), det, cls, is_degenerate(labels))


def dihedral_angles(labels, precision=64):
    """theta for edges a..f (theta of edge d_ij is the angle theta_kl, {k,l} opposite)."""
    cm = cayley_menger(labels)
    if cm.degenerate:
        raise DegenerateError(f"degenerate tetrahedron {tuple(map(str, cm.labels))}: "
                              "the ratio-of-factorials case is not handled")
    out = []
    with mpmath.workdps(precision + 10):
        for i, j in EDGE_PAIRS:
            k, l = sorted({1, 2, 3, 4} - {i, j})
            num = _mp(cm.adjugate(k, l)) + mpmath.sqrt(_mp(-cm.det * cm.minor_kkll(k, l)))
            den = mpmath.sqrt(_mp(cm.adjugate(k, k) * cm.adjugate(l, l)))
            x = num / den
            theta = -1j * mpmath.log(x)
            if cm.cls != MINKOWSKIAN:
                theta = mpmath.re(theta) if abs(mpmath.im(theta)) < mpmath.mpf(10) ** (-precision) else theta
            out.append(theta)
    with mpmath.workdps(precision):
        return [+t for t in out]


def _mp(x):
    x = Fraction(x)
    return mpmath.mpf(x.numerator) / x.denominator


@dataclass(frozen=True)
class HalfSums:
    S: tuple  # S1, S2, S3 (S4 = 0 is implicit)
    T: tuple  # T1..T4


def half_sums(labels):
    a, b, c, d, e, f = tet_labels(labels)
    S = ((a + d + b + c) / 2, (a + d + e + f) / 2, (b + c + e + f) / 2)
    T = tuple(sum(t) / 2 for t in faces((a, b, c, d, e, f)))
    return HalfSums(S, T)


def _polymul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        for j, y in enumerate(q):
            out[i + j] += x * y
    return out


def variational_polynomial(labels):
    """Coefficients [c0, c1, ...] of E(u) = u prod(S_i - u) + prod(u - T_j)."""
    hs = half_sums(labels)
    left = [Fraction(0), Fraction(1)]
    for s in hs.S:
        left = _polymul(left, [s, Fraction(-1)])
    right = [Fraction(1)]
    for t in hs.T:
        right = _polymul(right, [-t, Fraction(1)])
    E = [x + y for x, y in zip(left, right)]
    while len(E) > 1 and E[-1] == 0:
        E.pop()
    return E


def coefficient_a(labels):
    a, b, c, d, e, f = tet_labels(labels)
    return (a * d + b * c + e * f) / 2


def coefficient_b(labels):
    a, b, c, d, e, f = tet_labels(labels)
    return -(b * c * (b + c) + a * d * (a + d) + e * f * (e + f) + a * b * c + a * b * d + a * c * d
             + b * c * d + a * b * e + b * c * e + a * d * e + c * d * e + a * c * f + b * c * f
             + a * d * f + b * d * f + a * e * f + b * e * f + c * e * f + d * e * f) / 4


@dataclass(frozen=True)
class VariationalData:
    labels: tuple
    A: Fraction
    B: Fraction
    C: Fraction
    D: Fraction
    roots: tuple  # (v_plus, v_minus) as QuadNum; equal when D == 0
    in_cut: tuple  # flag per root
    cut: tuple  # (m, M)

    @property
    def field(self):
        return self.roots[0].m if self.D != 0 else 1

    def Bj(self):
        hs = half_sums(self.labels)
        return tuple(self.B + 2 * self.A * t for t in hs.T)


def variational_solve(labels):
    labels = tet_labels(labels)
    if is_degenerate(labels):
        raise DegenerateError(f"degenerate tetrahedron {tuple(map(str, labels))}")
    E = variational_polynomial(labels)
    if len(E) != 3:
        raise DegenerateError("variational equation is not quadratic")
    Cp, B, A = E
    D = B * B - 4 * A * Cp
    hs = half_sums(labels)
    for x in hs.S + hs.T:
        if A * x * x + B * x + Cp == 0:
            raise DegenerateError(f"a variational root equals the half sum {x}")
    s, m = squarefree_split(D)
    if D == 0:
        roots = (QuadNum(-B / (2 * A)),) * 2
    else:
        roots = (QuadNum(-B / (2 * A), s / (2 * A), m), QuadNum(-B / (2 * A), -s / (2 * A), m))
    lo, hi = max([Fraction(0)] + list(hs.T)), min(hs.S)
    flags = []
    for r in roots:
        if r.q != 0 and r.m < 0:
            flags.append(False)
        else:
            x = r.to_mp()
            flags.append(bool(x <= _mp(lo) or x >= _mp(hi)))
    return VariationalData(labels, A, B, Cp, D, roots, tuple(flags), (lo, hi))


def geometry_report(labels, precision=64):
    cm = cayley_menger(labels)
    rep = {"labels": [str(x) for x in cm.labels], "det": str(cm.det), "class": cm.cls,
           "degenerate": cm.degenerate, "volume": str(cm.volume)}
    hs = half_sums(labels)
    rep["S"] = [str(x) for x in hs.S]
    rep["T"] = [str(x) for x in hs.T]
    if cm.degenerate:
        return rep
    with mpmath.workdps(precision):
        rep["angles"] = [[mpmath.nstr(mpmath.re(t), precision), mpmath.nstr(mpmath.im(t), precision)]
                         for t in dihedral_angles(labels, precision)]
    vd = variational_solve(labels)
    rep.update({"A": str(vd.A), "B": str(vd.B), "C'": str(vd.C), "D": str(vd.D),
                "roots": [r.to_json() for r in vd.roots], "roots_in_cut": list(vd.in_cut)})
    return rep
