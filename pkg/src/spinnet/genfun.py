"""Rational spin generating function: curve polynomials, Fourier weights, series."""

import csv
import io
from fractions import Fraction

import numpy as np

from .errors import CapacityError, InvalidCurveError
from .evaluation import _curve_data
from .graph import curves

MAX_FOURIER_CURVES = 20


class MultiPoly:
    """Sparse polynomial in the edge variables z_e: {exponent tuple: coefficient}."""

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        self.terms = {}
        for k, v in (terms or {}).items():
            if v:
                self.terms[tuple(k)] = v

    def __eq__(self, other):
        return isinstance(other, MultiPoly) and self.nvars == other.nvars and self.terms == other.terms

    def coeff(self, exps):
        return self.terms.get(tuple(exps), 0)

    def items(self):
        """Terms in lexicographic exponent order."""
        return sorted(self.terms.items())

    def degree(self):
        return max((sum(k) for k in self.terms), default=-1)

    def __repr__(self):
        return f"MultiPoly({self.nvars}, {dict(self.items())})"


class TruncatedSeries(MultiPoly):
    """MultiPoly holding all terms of total degree <= D (and <= cap componentwise)."""

    def __init__(self, nvars, terms, degree, cap=None):
        super().__init__(nvars, terms)
        self.D = degree
        self.cap = cap

    def dump_csv(self, names=None):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(list(names or [f"z{i}" for i in range(self.nvars)]) + ["coefficient"])
        for k, v in self.items():
            w.writerow(list(k) + [str(v)])
        return buf.getvalue()


def _monomial(g, c):
    e = [0] * g.n_edges
    for i in c:
        e[i] += 1
    return tuple(e)


def curve_polynomial(g, X=()):
    """Sum over all curves c of eps_X(c) * prod_{e in c} z_e (eps = -1 on X)."""
    cs = curves(g)
    X = {tuple(sorted(c)) for c in X}
    unknown = X - set(cs)
    if unknown:
        raise InvalidCurveError(f"not curves of the graph: {sorted(unknown)}")
    terms = {}
    for c in cs:
        m = _monomial(g, c)
        terms[m] = terms.get(m, 0) + (-1 if c in X else 1)
    return MultiPoly(g.n_edges, terms)


def _parity(x):
    x = x.copy()
    for sh in (32, 16, 8, 4, 2, 1):
        x ^= x >> sh
    return x & 1


def _iota_table(g):
    """(-1)^iota(Y) for every subset Y of all curves (empty curve included), bit i = curve i."""
    cs = curves(g)
    n = len(cs)
    if n > MAX_FOURIER_CURVES:
        raise CapacityError(f"{n} curves exceed the direct Fourier cap of {MAX_FOURIER_CURVES}")
    nonempty, cp = _curve_data(g)
    pos = {c: i for i, c in enumerate(cs)}
    rows = [0] * n  # bitmask of lower-indexed curves crossing curve i an odd number of times
    for a, ca in enumerate(nonempty):
        for b, cb in enumerate(nonempty):
            if cp[a][b] and pos[cb] < pos[ca]:
                rows[pos[ca]] |= 1 << pos[cb]
    # iota is a quadratic form: adding curve i to Y (lower bits only) adds <row_i, Y>
    q = np.zeros(1 << n, dtype=np.int64)
    for i in range(n):
        low = np.arange(1 << i, dtype=np.int64)
        q[(1 << i):(1 << (i + 1))] = q[:1 << i] ^ _parity(low & rows[i])
    return cs, 1 - 2 * q


def _wht(v):
    v = v.copy()
    h, n = 1, len(v)
    while h < n:
        v = v.reshape(-1, 2, h)
        a, b = v[:, 0, :].copy(), v[:, 1, :].copy()
        v[:, 0, :], v[:, 1, :] = a + b, a - b
        v = v.reshape(n)
        h *= 2
    return v


def fourier_coefficients(g):
    """{X (tuple of curves): a_X} for the nonzero a_X, by a Walsh-Hadamard transform."""
    cs, signs = _iota_table(g)
    spec = _wht(signs)
    denom = 1 << len(cs)
    out = {}
    for x in np.nonzero(spec)[0]:
        X = tuple(cs[i] for i in range(len(cs)) if x >> i & 1)
        out[X] = Fraction(int(spec[x]), denom)
    return out


def fourier_coefficients_direct(g):
    """Same as fourier_coefficients by the defining double sum (small graphs only)."""
    from .graph import crossing_parity
    from itertools import combinations
    cs = curves(g)
    n = len(cs)
    iota = []
    for y in range(1 << n):
        Y = [cs[i] for i in range(n) if y >> i & 1]
        iota.append(sum(crossing_parity(g, [c1, c2]) for c1, c2 in combinations(Y, 2)) % 2)
    out = {}
    for x in range(1 << n):
        s = sum((-1) ** (bin(x & y).count("1") + iota[y]) for y in range(1 << n))
        if s:
            out[tuple(cs[i] for i in range(n) if x >> i & 1)] = Fraction(s, 1 << n)
    return out


def _mul_small(big, small, D, cap):
    out = {}
    for k1, v1 in big.items():
        d1 = sum(k1)
        for k2, v2 in small:
            if d1 + k2[1] > D:
                continue
            k = tuple(a + b for a, b in zip(k1, k2[0]))
            if cap is not None and any(a > c for a, c in zip(k, cap)):
                continue
            out[k] = out.get(k, 0) + v1 * v2
    return {k: v for k, v in out.items() if v}


def _inv_square_series(u_terms, nvars, D, cap):
    """(1+u)^-2 = sum_m (-1)^m (m+1) u^m, truncated."""
    small = [((k, sum(k)), v) for k, v in u_terms.items() if sum(k) > 0]
    zero = (0,) * nvars
    total = {zero: 1}
    power = {zero: 1}
    m = 0
    while power:
        m += 1
        power = _mul_small(power, small, D, cap)
        c = (-1) ** m * (m + 1)
        for k, v in power.items():
            total[k] = total.get(k, 0) + c * v
    return total


def spin_series_expand(g, D, cap=None):
    """Truncation of sum_X a_X P_X^-2 to total degree D (optionally capped per variable)."""
    series = {}
    cap = tuple(cap) if cap is not None else None
    for X, a in fourier_coefficients(g).items():
        P = curve_polynomial(g, X)
        const = P.terms.pop((0,) * g.n_edges, 0)
        if const != 1:
            # a_X vanishes whenever X holds the empty curve
            raise ValueError("unexpected constant term in a curve polynomial")
        for k, v in _inv_square_series(P.terms, g.n_edges, D, cap).items():
            series[k] = series.get(k, 0) + a * v
    out = {}
    for k, v in series.items():
        if v:
            if v.denominator != 1:
                raise ArithmeticError(f"non-integral series coefficient {v} at {k}")
            out[k] = int(v)
    return TruncatedSeries(g.n_edges, out, D, cap)


def diagonal_series(g, gamma, n_max):
    """Coefficients of z^{n gamma} in the spin generating function, n = 0..n_max."""
    col = g.colors(gamma)
    cap = tuple(n_max * x for x in col)
    s = spin_series_expand(g, n_max * sum(col), cap)
    return [s.coeff(tuple(n * x for x in col)) for n in range(n_max + 1)]
