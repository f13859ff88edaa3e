"""Guessing polynomial recurrences and extracting their formal Nilsson solutions."""

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

import mpmath
import numpy as np
import sympy

from .errors import NotFoundError, UnsupportedError
from .quadnum import QuadNum, squarefree_split

_PRIMES = []


def _primes(k):
    while len(_PRIMES) < k:
        start = _PRIMES[-1] if _PRIMES else (1 << 61)
        _PRIMES.append(int(sympy.prevprime(start)))
    return _PRIMES[:k]


def _as_fraction(x):
    if hasattr(x, "radicand"):
        if x.radicand != 1:
            raise ValueError("sequence terms must be rational")
        return x.value
    return Fraction(x)


@dataclass(frozen=True)
class PolyRecurrence:
    """sum_i p_i(n) a_{n+i} = 0; coeffs[i][j] is the coefficient of n^j in p_i."""

    coeffs: tuple

    @property
    def order(self):
        return len(self.coeffs) - 1

    @property
    def degree(self):
        return max(len(p) - 1 for p in self.coeffs)

    def p(self, i, n):
        return sum(c * n ** j for j, c in enumerate(self.coeffs[i]))

    def residual(self, seq, n):
        return sum(self.p(i, n) * seq[n + i] for i in range(self.order + 1))

    def annihilates(self, seq):
        seq = [_as_fraction(x) for x in seq]
        return all(self.residual(seq, n) == 0 for n in range(len(seq) - self.order))

    def characteristic(self):
        """Leading symbol sum_i [n^d] p_i * x^i as integer coefficients (low to high)."""
        d = self.degree
        return [p[d] if len(p) > d else 0 for p in self.coeffs]

    def to_strings(self):
        return [" ".join(str(c) for c in p) for p in self.coeffs]

    @classmethod
    def from_strings(cls, rows):
        return cls(tuple(tuple(int(c) for c in r.split()) for r in rows))

    def __str__(self):
        parts = []
        for i, p in enumerate(self.coeffs):
            poly = " + ".join(f"({c})*n^{j}" for j, c in enumerate(p) if c)
            parts.append(f"[{poly or 0}]*a(n+{i})")
        return " + ".join(parts) + " = 0"


# ----------------------------------------------------------------------
# modular linear algebra

def _mod(x, p):
    return x.numerator % p * pow(x.denominator % p, -1, p) % p


def _rows_mod(seq, r, d, p, count):
    rows = []
    for n in range(count):
        nj = [pow(n, j, p) for j in range(d + 1)]
        rows.append([_mod(seq[n + i], p) * nj[j] % p for i in range(r + 1) for j in range(d + 1)])
    return rows


def _rref_mod(rows, ncols, p):
    M = [r[:] for r in rows]
    pivots, r = [], 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c], -1, p)
        M[r] = [x * inv % p for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [(x - f * y) % p for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def _nullity_mod(seq, r, d, count, p):
    ncols = (r + 1) * (d + 1)
    _, piv = _rref_mod(_rows_mod(seq, r, d, p, count), ncols, p)
    return ncols - len(piv)


def _null_vector_mod(seq, r, d, count, p, free_col):
    """Nullspace vector with the chosen free column set to 1 and other free columns 0."""
    ncols = (r + 1) * (d + 1)
    M, piv = _rref_mod(_rows_mod(seq, r, d, p, count), ncols, p)
    free = [c for c in range(ncols) if c not in piv]
    if free_col not in free:
        return None, free
    v = [0] * ncols
    v[free_col] = 1
    for row, c in zip(M, piv):
        v[c] = -row[free_col] % p
    return v, free


def _crt(residues, primes):
    x, M = 0, 1
    for r, p in zip(residues, primes):
        t = (r - x) * pow(M, -1, p) % p
        x += M * t
        M *= p
    return x, M


def _exact_solution(seq, r, d, count, max_primes=64):
    ncols = (r + 1) * (d + 1)
    p0 = _primes(1)[0]
    _, free = _null_vector_mod(seq, r, d, count, p0, -1)
    free_col = free[-1] if free else None
    if free_col is None:
        return None
    vecs, used, last = [], [], None
    for p in _primes(max_primes):
        v, fr = _null_vector_mod(seq, r, d, count, p, free_col)
        if v is None or fr != free:
            continue  # unlucky prime
        vecs.append(v)
        used.append(p)
        if len(used) < 2:
            continue
        M = 1
        for q in used:
            M *= q
        rec = []
        for c in range(ncols):
            x, M = _crt([vv[c] for vv in vecs], used)
            fr_ = _ratrecon_big(x, M)
            if fr_ is None:
                rec = None
                break
            rec.append(fr_)
        if rec is not None and rec == last:
            return rec
        last = rec
    return None


def _ratrecon_big(u, m):
    from math import isqrt
    bound = isqrt(m // 2)
    r0, r1, s0, s1 = m, u % m, 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    return Fraction(r1, s1)


def _normalize(vec, r, d):
    den = reduce(lcm, (x.denominator for x in vec), 1)
    ints = [int(x * den) for x in vec]
    g = reduce(gcd, ints, 0) or 1
    ints = [x // g for x in ints]
    polys = [ints[i * (d + 1):(i + 1) * (d + 1)] for i in range(r + 1)]
    lead = next(c for c in reversed(polys[r]) if c)
    if lead < 0:
        polys = [[-c for c in p] for p in polys]
    trimmed = []
    for p in polys:
        while len(p) > 1 and p[-1] == 0:
            p = p[:-1]
        trimmed.append(tuple(p))
    return PolyRecurrence(tuple(trimmed))


def required_length(r, d):
    return (r + 1) * (d + 2) + r + 8


def guess_recurrence(seq, r_max=4, d_max=40, holdout=8):
    """Minimal (order, then degree) recurrence fitted on all but ``holdout`` terms.

    The result is verified exactly on every supplied term.
    """
    seq = [_as_fraction(x) for x in seq]
    p = _primes(1)[0]
    for r in range(1, r_max + 1):
        feasible = [d for d in range(d_max + 1) if len(seq) >= required_length(r, d)]
        if not feasible:
            break
        count = len(seq) - holdout - r
        hi = feasible[-1]
        if _nullity_mod(seq, r, hi, count, p) == 0:
            continue
        lo = 0
        while lo < hi:
            mid = (lo + hi) // 2
            if _nullity_mod(seq, r, mid, count, p) > 0:
                hi = mid
            else:
                lo = mid + 1
        for d in range(lo, feasible[-1] + 1):
            vec = _exact_solution(seq, r, d, count)
            if vec is None:
                continue
            rec = _normalize(vec, r, d)
            if rec.annihilates(seq):
                return rec
    raise NotFoundError(f"no recurrence with order <= {r_max} and degree <= {d_max} "
                        f"is supported by {len(seq)} terms")


# ----------------------------------------------------------------------
# formal solutions

@dataclass
class FormalSolution:
    Lambda: QuadNum
    alpha: Fraction
    mu: list  # QuadNum, mu[0] == 1

    def to_json(self):
        return {"Lambda": self.Lambda.to_json(), "alpha": str(self.alpha),
                "mu": [m.to_json() for m in self.mu]}


def _binom_poly(s):
    """Coefficients (low to high) of binom(beta, s) as a polynomial in beta."""
    poly = [Fraction(1)]
    for k in range(s):
        # multiply by (beta - k)/(k+1)
        new = [Fraction(0)] * (len(poly) + 1)
        for j, c in enumerate(poly):
            new[j + 1] += c / (k + 1)
            new[j] -= c * k / (k + 1)
        poly = new
    return poly


def _G(rec, Lam, q):
    """G_q(beta) as a list of QuadNum coefficients in beta (low to high)."""
    d = rec.degree
    out = [QuadNum(0)] * (q + 1)
    for i, p in enumerate(rec.coeffs):
        Li = Lam ** i
        for t in range(q + 1):
            j = d - t
            if j < 0 or j >= len(p) or p[j] == 0:
                continue
            s = q - t
            b = _binom_poly(s)
            w = Li * p[j] * (Fraction(i) ** s if s else 1)
            for k, c in enumerate(b):
                if c:
                    out[k] = out[k] + w * c
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _eval(poly, x):
    acc = QuadNum(0)
    for c in reversed(poly):
        acc = acc * x + c
    return acc


def _poly_roots_rational(poly):
    """Roots of a degree <= 2 polynomial with QuadNum coefficients, when rational."""
    if len(poly) == 2:
        return [-poly[0] / poly[1]]
    if len(poly) == 3:
        c, b, a = poly
        D = b * b - 4 * a * c
        r = D.sqrt_exact()
        if r is None or (r.m != 1 and D.m != 1 and r.m != D.m) or \
                (r.m != 1 and any(c.m not in (1, r.m) for c in poly)):
            raise UnsupportedError("indicial equation has irrational roots")
        return [(-b + r) / (2 * a), (-b - r) / (2 * a)]
    raise UnsupportedError("indicial equation of degree > 2")


def characteristic_roots(rec):
    """Nonzero roots of the leading symbol in a quadratic field, with multiplicity."""
    x = sympy.Symbol("x")
    chi = sympy.Poly(list(reversed(rec.characteristic())), x)
    out = []
    _, facs = sympy.factor_list(chi)
    for f, mult in facs:
        f = sympy.Poly(f, x)
        cs = [Fraction(int(c.p), int(c.q)) for c in f.all_coeffs()]
        if len(cs) == 2:
            if cs[1] != 0:
                out.append((QuadNum(-cs[1] / cs[0]), mult))
        elif len(cs) == 3:
            a, b, c = cs
            s, m = squarefree_split(b * b - 4 * a * c)
            for sg in (1, -1):
                out.append((QuadNum(-b / (2 * a), sg * s / (2 * a), m), mult))
        else:
            raise UnsupportedError("characteristic polynomial has a factor of degree > 2")
    return out


def formal_solutions(rec, depth=6):
    sols = []
    for Lam, mult in characteristic_roots(rec):
        kappa, Gk = None, None
        for q in range(1, rec.degree + 3):
            G = _G(rec, Lam, q)
            if any(c != 0 for c in G):
                kappa, Gk = q, G
                break
        if kappa is None:
            raise UnsupportedError("no indicial equation found")
        if mult > 1 and len(Gk) == 3:
            pass  # coincident roots: exponents come from the quadratic indicial equation
        alphas = _poly_roots_rational(Gk)
        Gs = [_G(rec, Lam, kappa + j) for j in range(depth + 1)]
        for a in alphas:
            if not a.is_rational():
                raise UnsupportedError("irrational exponent")
            alpha = a.p
            mu = [QuadNum(1)]
            for j in range(1, depth + 1):
                acc = QuadNum(0)
                for l in range(j):
                    acc = acc + mu[l] * _eval(Gs[j - l], QuadNum(alpha - l))
                den = _eval(Gs[0], QuadNum(alpha - j))
                if den == 0:
                    raise UnsupportedError("resonant exponents: log terms would be needed")
                mu.append(-acc / den)
            sols.append(FormalSolution(Lam, alpha, mu))
    return sols


# ----------------------------------------------------------------------
# residuals and Stokes fitting

def _branch_value(sol, n, depth):
    n = mpmath.mpf(n)
    h = sum(m.to_mp() * n ** (-l) for l, m in enumerate(sol.mu[:depth + 1]))
    return mpmath.power(sol.Lambda.to_mp(), n) * mpmath.power(n, mpmath.mpf(sol.alpha.numerator) / sol.alpha.denominator) * h


def fit_stokes(seq, solutions, n_probe, depth=6):
    """Least-squares Stokes constants on the probe range (complex)."""
    seq = [_as_fraction(x) for x in seq]
    A = mpmath.matrix(len(n_probe), len(solutions))
    b = mpmath.matrix(len(n_probe), 1)
    for i, n in enumerate(n_probe):
        for j, s in enumerate(solutions):
            A[i, j] = _branch_value(s, n, depth)
        b[i] = mpmath.mpf(seq[n].numerator) / seq[n].denominator
    x = mpmath.qr_solve(A, b)[0] if len(n_probe) > len(solutions) else mpmath.lu_solve(A, b)
    return [x[j] for j in range(len(solutions))]


def expansion_residual(seq, solutions, stokes, n_probe, depth=6, block=10):
    """Residuals a_n - sum S Lambda^n n^alpha h(1/n) and their observed decay order."""
    seq = [_as_fraction(x) for x in seq]
    n_probe = list(n_probe)
    if len(n_probe) < 4:
        raise ValueError("insufficient probe range")
    rows = []
    for n in n_probe:
        exact = mpmath.mpf(seq[n].numerator) / seq[n].denominator
        pred = sum(S * _branch_value(s, n, depth) for S, s in zip(stokes, solutions)) if solutions else 0
        rows.append((n, exact, pred, abs(exact - pred)))
    growth = max((abs(s.Lambda.to_mp()) for s in solutions), default=1)
    pts = []
    for i in range(0, len(rows), block):
        blk = [r for r in rows[i:i + block] if r[3] > 0]
        if blk:
            n, _, _, err = max(blk, key=lambda r: r[3])
            pts.append((float(mpmath.log(n)), float(mpmath.log(err / growth ** n))))
    if len(pts) < 2:
        return rows, None
    xs, ys = np.array([p[0] for p in pts]), np.array([p[1] for p in pts])
    slope = float(np.polyfit(xs, ys, 1)[0])
    return rows, slope


# ----------------------------------------------------------------------
# 6j series from data

SIXJ_TERMS = 140


def sixj_series_data(labels, depth=6, n_terms=SIXJ_TERMS, jobs=1):
    """U-normalized scaled 6j sequence, its minimal recurrence and formal solutions."""
    from .asymptotics import u_sequence
    seq = u_sequence(labels, n_terms - 1, jobs=jobs)
    rec = guess_recurrence(seq, r_max=2, d_max=(n_terms - 10) // 3 - 2)
    return {"sequence": seq, "recurrence": rec, "solutions": formal_solutions(rec, depth)}


def attach_series(expansion, solutions, tol=None):
    """Copy mu coefficients onto the expansion branches with matching Lambda and alpha."""
    if tol is None:
        tol = mpmath.mpf(10) ** (-(mpmath.mp.dps // 2))
    matched = 0
    for b in expansion.branches:
        for s in solutions:
            if s.alpha == b.alpha and abs(s.Lambda.to_mp() - b.Lambda) < tol:
                b.mu = list(s.mu)
                matched += 1
                break
    return matched
