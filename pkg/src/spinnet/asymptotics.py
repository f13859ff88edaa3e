"""Rank-one balanced-term asymptotics and the Nilsson data of 6j-symbols."""

from dataclasses import dataclass, field as dfield
from fractions import Fraction
from math import prod

import mpmath
import numpy as np
import sympy

from .errors import DegenerateError, ParseError, UnsupportedError
from .evaluation import scaled_sequence
from .geometry import (EUCLIDEAN, MINKOWSKIAN, PLANE, cayley_menger, dihedral_angles, faces,
                       half_sums, variational_solve)
from .graph import standard_graph
from .quadnum import QuadNum, rational_sqrt, squarefree_split


def _mp(x):
    if isinstance(x, QuadNum):
        return x.to_mp()
    x = Fraction(x)
    return mpmath.mpf(x.numerator) / x.denominator


# ----------------------------------------------------------------------
# balanced terms

@dataclass(frozen=True)
class Form:
    """Affine form A(n, k) = v0*n + v1*k + v raised to the power eps (factorial)."""

    v0: Fraction
    v1: Fraction
    v: Fraction
    eps: int

    def at(self, u):
        return self.v0 + self.v1 * u


@dataclass(frozen=True)
class BalancedTerm1D:
    """t(n,k) = C0^n C1^k prod_j A_j(n,k)!^eps_j."""

    C0: Fraction
    C1: Fraction
    forms: tuple

    def __post_init__(self):
        s0 = sum(f.eps * f.v0 for f in self.forms)
        s1 = sum(f.eps * f.v1 for f in self.forms)
        if s0 != 0 or s1 != 0:
            raise ParseError("term is not balanced: sum of eps_j A_j must be constant")

    @property
    def mu(self):
        return Fraction(sum(f.eps for f in self.forms), 2)

    @property
    def nu(self):
        return sum(Fraction(f.eps) * f.v for f in self.forms)

    @property
    def interval(self):
        lo = [-f.v0 / f.v1 for f in self.forms if f.v1 > 0]
        hi = [-f.v0 / f.v1 for f in self.forms if f.v1 < 0]
        return (max(lo) if lo else None, min(hi) if hi else None)

    def value(self, n, k):
        """Exact t(n,k) (0 when a factorial argument with eps=-1 is negative)."""
        from math import factorial
        out = Fraction(self.C0) ** n * Fraction(self.C1) ** k
        for f in self.forms:
            x = f.v0 * n + f.v1 * k + f.v
            if x.denominator != 1:
                raise ParseError("non-integral factorial argument")
            x = int(x)
            if x < 0:
                if f.eps < 0:
                    return Fraction(0)
                raise ParseError("negative factorial argument in the numerator")
            out = out * factorial(x) ** f.eps if f.eps > 0 else out / factorial(x) ** -f.eps
        return out

    def k_range(self, n):
        lo, hi = self.interval
        return int(np.floor(float(lo * n))) - 2, int(np.ceil(float(hi * n))) + 2


def make_term(C0, C1, forms):
    return BalancedTerm1D(Fraction(C0), Fraction(C1),
                          tuple(Form(Fraction(a), Fraction(b), Fraction(c), int(e)) for a, b, c, e in forms))


def central_binomial_term():
    """n! / (k! (n-k)!)."""
    return make_term(1, 1, [(1, 0, 0, 1), (0, 1, 0, -1), (1, -1, 0, -1)])


def sixj_term(labels):
    """(-1)^k (k+1)! / (prod (n S_i - k)! prod (k - n T_j)!)."""
    hs = half_sums(labels)
    forms = [(0, 1, 1, 1)] + [(s, -1, 0, -1) for s in hs.S] + [(-t, 1, 0, -1) for t in hs.T]
    return make_term(1, -1, forms)


@dataclass(frozen=True)
class CriticalPoint:
    u: object  # QuadNum when exact, else mpc
    order: int
    in_cut: bool

    def numeric(self):
        return _mp(self.u) if isinstance(self.u, QuadNum) else self.u


def _u(x):
    return x.to_mp() if isinstance(x, QuadNum) else x


def critical_points_1d(t, precision=64):
    """Solutions of C1 prod A_j(u)^(eps_j v1_j) = 1 with their order m."""
    u = sympy.Symbol("u")
    num, den = sympy.Integer(1), sympy.Integer(1)
    for f in t.forms:
        e = f.eps * f.v1
        if e.denominator != 1:
            raise UnsupportedError("non-integral exponent in the variational equation")
        A = sympy.Rational(f.v0.numerator, f.v0.denominator) + \
            sympy.Rational(f.v1.numerator, f.v1.denominator) * u
        if e > 0:
            num *= A ** int(e)
        elif e < 0:
            den *= A ** int(-e)
    C1 = sympy.Rational(t.C1.numerator, t.C1.denominator)
    P = sympy.Poly(sympy.expand(C1 * num - den), u, domain="QQ")
    if P.is_zero:
        raise DegenerateError("variational equation vanishes identically")
    denP = sympy.Poly(den, u, domain="QQ")
    lo, hi = t.interval
    out = []
    _, factors = sympy.sqf_list(P)
    for fac, mult in factors:
        if fac.degree() == 0:
            continue
        if sympy.rem(denP, fac, u) == 0 or sympy.gcd(denP, fac).degree() > 0:
            raise DegenerateError("a critical point coincides with a zero of an affine form")
        coeffs = [Fraction(int(c.p), int(c.q)) for c in fac.all_coeffs()]
        roots = []
        if len(coeffs) == 2:
            roots = [QuadNum(-coeffs[1] / coeffs[0])]
        elif len(coeffs) == 3:
            a, b, c = coeffs
            D = b * b - 4 * a * c
            s, m = squarefree_split(D)
            roots = [QuadNum(-b / (2 * a), s / (2 * a), m), QuadNum(-b / (2 * a), -s / (2 * a), m)]
        else:
            with mpmath.workdps(precision + 20):
                roots = list(mpmath.polyroots([_mp(c) for c in coeffs], maxsteps=200, extraprec=precision))
        for r in roots:
            x = _u(r)
            real = abs(mpmath.im(x)) <= mpmath.mpf(10) ** (-precision // 2)
            cut = bool(real and ((lo is not None and mpmath.re(x) <= _mp(lo)) or
                                 (hi is not None and mpmath.re(x) >= _mp(hi))))
            out.append(CriticalPoint(r, int(mult), cut))
    return out


def _pow(A, e):
    """Principal branch A**e for mp numbers (complex-safe)."""
    if A == 0:
        return mpmath.mpf(1) if e == 0 else mpmath.mpf(0)
    return mpmath.power(mpmath.mpc(A), _mp(e))


def V_derivative(t, u, j):
    if j == 1:
        return mpmath.log(_mp(t.C1) * prod(_pow(f.at(u), f.eps * f.v1) for f in t.forms))
    return sum(f.eps * _mp(f.v1) ** j * (-1) ** j * mpmath.factorial(j - 2) / _mp_aff(f, u) ** (j - 1)
               for f in t.forms if f.v1 != 0)


def _mp_aff(f, u):
    return _mp(f.v0) + _mp(f.v1) * u


def W_value(t, u):
    return prod(_pow(_mp_aff(f, u), Fraction(f.eps, 2) + f.eps * f.v) for f in t.forms)


def W_logderiv(t, u):
    return sum((Fraction(f.eps, 2) + f.eps * f.v) * _mp(f.v1) / _mp_aff(f, u)
               for f in t.forms if f.v1 != 0)


def lambda_value(t, u):
    """C0 prod_{A_j(u) != 0} A_j(u)^(eps_j v0_j) (exact when u is a QuadNum and exponents integral)."""
    if isinstance(u, QuadNum) and all((f.eps * f.v0).denominator == 1 for f in t.forms):
        out = QuadNum(t.C0)
        for f in t.forms:
            A = f.v0 + f.v1 * u if f.v1 else QuadNum(f.v0)
            if A == 0 or f.v0 == 0:
                continue
            out = out * A ** int(f.eps * f.v0)
        return out
    x = _u(u)
    return _mp(t.C0) * prod(_pow(_mp_aff(f, x), f.eps * f.v0) for f in t.forms if _mp_aff(f, x) != 0)


def contour_constant(m):
    """c_m = 2 Gamma((m+2)/(m+1)) (m+1)!^(1/(m+1)), times sin(pi/(m+1)) for even m.

    For even m the steepest-descent valleys adjacent to the real contour are
    2 pi/(m+1) apart, not opposite, which brings in the chord length factor.
    """
    c = 2 * mpmath.gamma(mpmath.mpf(m + 2) / (m + 1)) * mpmath.factorial(m + 1) ** (mpmath.mpf(1) / (m + 1))
    if m % 2 == 0:
        c *= mpmath.sin(mpmath.pi / (m + 1))
    return c


def cubic_companion_ratio(V3, V4, dlogW):
    """Ratio S_-/S_+ of the n^(-1/3) companion term at an order-2 critical point.

    V3, V4, dlogW are real values of V''', V'''' and W'/W at the point.
    """
    if V3 > 0:
        dlogW = -dlogW
    c = 6 / abs(V3)
    g = mpmath.gamma
    third = mpmath.mpf(1) / 3
    t0 = g(4 * third) * c ** third
    t1 = dlogW * g(2 * third) / 3 * c ** (2 * third)
    t4 = V4 / 24 * g(5 * third) / 3 * c ** (5 * third)
    # chord factors of the two descent rays at +-2pi/3: D1/D0 = D4/D0 = -1
    return -(t1 + t4) / t0


@dataclass
class NilssonBranch:
    Lambda: object  # mp number
    alpha: Fraction
    S: object  # mp number
    Lambda_exact: object = None  # QuadNum or None
    mu: list = dfield(default_factory=lambda: [QuadNum(1)])
    u: object = None
    order: int = 1
    in_cut: bool = False
    contributes: bool = True
    label: str = ""

    def to_json(self, digits=30):
        def cnum(z):
            z = mpmath.mpc(z)
            return [mpmath.nstr(z.real, digits), mpmath.nstr(z.imag, digits)]
        return {"label": self.label, "Lambda": cnum(self.Lambda),
                "Lambda_exact": self.Lambda_exact.to_json() if self.Lambda_exact is not None else None,
                "alpha": str(self.alpha), "S": cnum(self.S), "order": self.order,
                "in_cut": self.in_cut, "contributes": self.contributes,
                "mu": [m.to_json() for m in self.mu]}


@dataclass
class NilssonExpansion:
    branches: list
    field: int = 1  # squarefree m of Q(sqrt(m))
    beta: int = 0  # nilpotency exponent; log terms never arise here
    notes: list = dfield(default_factory=list)

    def contributing(self):
        return [b for b in self.branches if b.contributes]

    def evaluate(self, n, depth=None):
        """Sum over contributing branches of S Lambda^n n^alpha sum_l mu_l n^-l."""
        n = mpmath.mpf(n)
        tot = 0
        for b in self.contributing():
            mus = b.mu if depth is None else b.mu[:depth + 1]
            h = sum(_mp(m) * n ** (-l) for l, m in enumerate(mus))
            tot += b.S * mpmath.power(b.Lambda, n) * mpmath.power(n, _mp(b.alpha)) * h
        return tot

    def to_json(self, digits=30):
        return {"field": self.field, "beta": self.beta, "notes": self.notes,
                "branches": [b.to_json(digits) for b in self.branches]}


def term_asymptotics_1d(t, precision=64, depth=0, six_j=False):
    with mpmath.workdps(precision + 10):
        pts = critical_points_1d(t, precision)
        branches, notes = [], []
        for cp in pts:
            x = cp.numeric()
            m = cp.order
            W = W_value(t, x)
            if abs(W) < mpmath.mpf(10) ** (-precision // 2):
                raise UnsupportedError("W vanishes at a critical point")
            Vm = V_derivative(t, x, m + 1)
            alpha = t.mu + t.nu + 1 - Fraction(1, m + 1)
            c = contour_constant(m)
            if cp.in_cut:
                S = (2 * mpmath.pi) ** _mp(t.mu) * c * abs(W) / abs(Vm) ** (mpmath.mpf(1) / (m + 1))
            else:
                S = (2 * mpmath.pi) ** _mp(t.mu) * c * W / mpmath.power(-Vm, mpmath.mpf(1) / (m + 1))
            lam = lambda_value(t, cp.u)
            exact = lam if isinstance(lam, QuadNum) else None
            br = NilssonBranch(_mp(lam) if exact is not None else lam, alpha, S, exact, u=cp.u,
                               order=m, in_cut=cp.in_cut)
            branches.append(br)
            if m == 2 and cp.in_cut:
                r = cubic_companion_ratio(mpmath.re(Vm), mpmath.re(V_derivative(t, x, 4)),
                                          mpmath.re(W_logderiv(t, x)))
                branches.append(NilssonBranch(br.Lambda, alpha - Fraction(1, 3), S * r, exact,
                                              u=cp.u, order=m, in_cut=True))
            elif m > 2:
                notes.append(f"order {m} critical point: only the leading term is produced")
        on_cut = [b for b in branches if b.in_cut]
        if on_cut:
            smallest = min(abs(b.Lambda) for b in on_cut)
            for b in on_cut:
                b.contributes = bool(abs(abs(b.Lambda) - smallest) < mpmath.mpf(10) ** (-precision // 2))
            if not six_j:
                notes.append("selection heuristic: among cut points only the smallest |lambda| is kept")
        for b in branches:
            b.Lambda, b.S = +b.Lambda, +b.S
    fieldm = next((b.Lambda_exact.m for b in branches if b.Lambda_exact is not None and b.Lambda_exact.m != 1), 1)
    return NilssonExpansion(branches, fieldm, 0, notes)


# ----------------------------------------------------------------------
# normalization factor I!/Theta for the tetrahedron

def _bernoulli(k):
    b = sympy.bernoulli(k)
    return Fraction(int(b.p), int(b.q))


def _series_exp(c, depth):
    """exp of a power series with zero constant term, coefficients as Fractions."""
    out = [Fraction(1)] + [Fraction(0)] * depth
    # e' = c' e
    for n in range(1, depth + 1):
        out[n] = sum(k * c[k] * out[n - k] for k in range(1, n + 1)) / n
    return out


def theta_norm_asym(labels, depth=6):
    """Expansion of I!/Theta(n gamma) = prod_v sqrt(x! y! z! / (T+1)!) at n gamma.

    Returns dict: growth (mp), growth_squared (exact), prefactor (mp), mu (Fractions), s (mp list).
    """
    triples = faces(tuple(Fraction(x) for x in labels))
    logc = [Fraction(0)] * (depth + 1)
    R = Fraction(1)
    svals, lams = [], []
    for a, b, c in triples:
        T = (a + b + c) / 2
        xs = (T - a, T - b, T - c)
        if any(x <= 0 for x in xs):
            raise DegenerateError("a vertex is degenerate (zero half sum)")
        for x in xs:
            if x.denominator != 1 or T.denominator != 1:
                raise ParseError("coloring is not admissible")
        R *= prod(x ** int(x) for x in xs) / T ** int(T)
        svals.append((prod(_mp(x) for x in xs) / _mp(T) ** 3) ** mpmath.mpf(0.25))
        # half of the Stirling corrections
        for k in range(1, depth + 1):
            l = 2 * k - 1
            if l > depth:
                break
            coef = _bernoulli(2 * k) / (2 * k * (2 * k - 1))
            logc[l] += coef * (sum(x ** (1 - 2 * k) for x in xs) - T ** (1 - 2 * k)) / 2
        # -(1/2) log(1 + 1/(nT))
        for l in range(1, depth + 1):
            logc[l] -= Fraction((-1) ** (l + 1), l) / T ** l / 2
    mu = _series_exp(logc, depth)
    # (2 pi)^(1/2) s per vertex; sqrt(R) is the growth factor
    pref = (2 * mpmath.pi) ** 2 * prod(svals)
    return {"growth": mpmath.sqrt(_mp(R)), "growth_squared": R, "prefactor": pref,
            "mu": mu, "s": svals}


def lambda_abc(a, b, c):
    T = Fraction(a + b + c, 2)
    xs = (T - a, T - b, T - c)
    return mpmath.sqrt(prod(_mp(x) ** _mp(x) for x in xs) / _mp(T) ** _mp(T))


# ----------------------------------------------------------------------
# the 6j expansion

def _lambda_v(hs, v):
    """prod (v-T_j)^T_j / prod (S_i-v)^S_i, exact for QuadNum v and integral half sums."""
    out = QuadNum(1)
    for t in hs.T:
        out = out * (v - t) ** int(t)
    for s in hs.S:
        out = out / (s - v) ** int(s)
    return out


def _exact_growth(R, lam_v):
    """sqrt(R) * lam_v in a quadratic field when possible, else None."""
    r = rational_sqrt(R)
    if r is not None:
        return lam_v * r
    s, m = squarefree_split(R)
    if lam_v.q == 0 or lam_v.m == m:
        return lam_v * QuadNum(0, s, m)
    return None


def lambda_routes(labels, precision=64):
    """[(product route, angle route)] of Lambda for the v+ and v- branches."""
    cm = cayley_menger(labels)
    if cm.degenerate:
        raise DegenerateError("degenerate tetrahedron")
    vd = variational_solve(labels)
    hs = half_sums(labels)
    out = []
    with mpmath.workdps(precision + 10):
        nrm = theta_norm_asym(labels, 0)
        theta = dihedral_angles(labels, precision + 10)
        wsum = sum(th * _mp(a) for th, a in zip(theta, cm.labels))
        for sgn, v in ((1, vd.roots[0]), (-1, vd.roots[1])):
            out.append((nrm["growth"] * _lambda_v(hs, v).to_mp(), mpmath.exp(sgn * 1j * wsum / 2)))
    return out


def sixj_expansion(labels, precision=64, depth=0):
    cm = cayley_menger(labels)
    if cm.degenerate:
        raise DegenerateError(f"degenerate tetrahedron ({cm.cls} class); asymptotics refused")
    for t in faces(cm.labels):
        if sum(t) % 2:
            raise ParseError("labels are not admissible")
    vd = variational_solve(labels)
    hs = half_sums(labels)
    labs = cm.labels
    notes = []
    with mpmath.workdps(precision + 10):
        nrm = theta_norm_asym(labels, depth)
        theta = dihedral_angles(labels, precision + 10)
        tsum = sum(theta)
        wsum = sum(th * _mp(a) for th, a in zip(theta, labs))
        ang = [mpmath.exp(1j * wsum / 2), mpmath.exp(-1j * wsum / 2)]
        vol = _mp(abs(cm.det)) ** mpmath.mpf(0.5) / 6
        term = sixj_term(labels)
        branches = []
        for sgn, v, lam_ang in ((1, vd.roots[0], ang[0]), (-1, vd.roots[1], ang[1])):
            lam_v = _lambda_v(hs, v)
            exact = _exact_growth(nrm["growth_squared"], lam_v)
            lam_prod = nrm["growth"] * lam_v.to_mp()
            if abs(lam_prod - lam_ang) > mpmath.mpf(10) ** (-precision // 2):
                notes.append(f"angle route and lambda-product route differ for the {'+-'[sgn < 0]} branch")
            lam = lam_v.to_mp() * nrm["growth"]
            branches.append(NilssonBranch(+lam, Fraction(-3, 2), None, exact, u=v, order=1,
                                          in_cut=vd.in_cut[0 if sgn > 0 else 1], label="+" if sgn > 0 else "-"))
        if cm.cls == EUCLIDEAN:
            for b, sgn in zip(branches, (1, -1)):
                b.S = mpmath.exp(sgn * 1j * (tsum / 2 + mpmath.pi / 4)) / mpmath.sqrt(6 * mpmath.pi * vol)
        elif cm.cls == MINKOWSKIAN:
            for b, sgn in zip(branches, (1, -1)):
                b.S = -sgn * mpmath.exp(sgn * 1j * tsum / 2) / mpmath.sqrt(6 * mpmath.pi * vol)
                b.contributes = bool(abs(b.Lambda) < 1)
                if b.contributes and abs(mpmath.im(b.S)) > mpmath.mpf(10) ** (-precision // 2):
                    notes.append("Stokes constant of the contributing branch is not real")
        else:
            eng = term_asymptotics_1d(term, precision, six_j=True)
            lead = [b for b in eng.branches if b.alpha == Fraction(-4, 3)][0]
            comp = [b for b in eng.branches if b.alpha == Fraction(-5, 3)][0]
            scale = nrm["prefactor"]
            b0 = branches[0]
            branches = [
                NilssonBranch(b0.Lambda, Fraction(-4, 3), mpmath.re(lead.S) * scale, b0.Lambda_exact,
                              u=b0.u, order=2, in_cut=b0.in_cut, label="+"),
                NilssonBranch(b0.Lambda, Fraction(-5, 3), mpmath.re(comp.S) * scale, b0.Lambda_exact,
                              u=b0.u, order=2, in_cut=b0.in_cut, label="-"),
            ]
            notes.append("Plane Stokes constants from the cubic-saddle contour "
                         "(chord factor sqrt(3)/2 and the n^(-1/3) companion)")
        for b in branches:
            b.Lambda, b.S = +b.Lambda, +b.S
    _, field_m = squarefree_split(-cm.det)
    return NilssonExpansion(branches, field_m if cm.det != 0 else 1, 0, notes)


def plane_stokes_closed_form(labels):
    """Gamma(4/3) (12A)^(1/3) / (pi prod |B_j|^(1/6)), the single-constant Plane formula."""
    vd = variational_solve(labels)
    Bj = vd.Bj()
    return mpmath.gamma(mpmath.mpf(4) / 3) * (12 * _mp(vd.A)) ** (mpmath.mpf(1) / 3) / (
        mpmath.pi * prod(abs(_mp(b)) for b in Bj) ** (mpmath.mpf(1) / 6))


def engine_stokes(labels, precision=64):
    """Stokes constants of the U-normalized 6j from the generic engine (magnitude check)."""
    eng = term_asymptotics_1d(sixj_term(labels), precision, six_j=True)
    pref = theta_norm_asym(labels, 0)["prefactor"]
    return [(b, b.S * pref) for b in eng.branches]


# ----------------------------------------------------------------------
# numerics against exact values

def u_sequence(labels, n_max, jobs=1):
    g = standard_graph("tetrahedron")
    return scaled_sequence(g, tuple(int(x) for x in labels), n_max, "U", jobs=jobs)


def predict_and_compare(labels, n_range, precision=64, mus=None, values=None, n_min=5):
    """Rows (n, exact U value, prediction, abs err, rel err) for n in n_range.

    The prediction is NaN below n_min, where the expansion is not meaningful.

    ``mus`` optionally maps branch labels to recurrence-derived series coefficients.
    """
    exp = sixj_expansion(labels, precision)
    if mus:
        for b in exp.branches:
            if b.label in mus:
                b.mu = list(mus[b.label])
    n_range = list(n_range)
    vals = u_sequence(labels, max(n_range)) if values is None else values
    rows = []
    with mpmath.workdps(precision):
        for n in n_range:
            exact = vals[n].to_mp()
            if n < n_min:
                rows.append((n, vals[n], mpmath.nan, mpmath.nan, mpmath.nan))
                continue
            pred = exp.evaluate(n)
            pred = mpmath.re(pred) if abs(mpmath.im(pred)) < mpmath.mpf(10) ** (-precision // 2) * max(1, abs(pred)) else pred
            err = abs(pred - exact)
            rel = err / abs(exact) if exact != 0 else mpmath.inf
            rows.append((n, vals[n], pred, err, rel))
    return rows


def ponzano_regge(labels, n, precision=64):
    """sqrt(2)/sqrt(3 pi n^3 Vol) cos(n sum a theta_a/2 + sum theta_a/2 + pi/4)."""
    cm = cayley_menger(labels)
    with mpmath.workdps(precision):
        th = dihedral_angles(labels, precision)
        vol = mpmath.sqrt(_mp(abs(cm.det))) / 6
        ph = n * sum(t * _mp(a) for t, a in zip(th, cm.labels)) / 2 + sum(th) / 2 + mpmath.pi / 4
        return mpmath.sqrt(2) / mpmath.sqrt(3 * mpmath.pi * n ** 3 * vol) * mpmath.cos(ph)


# ----------------------------------------------------------------------
# spectral radius

def spectral_radius_estimate(g, n_max, tag="standard", values=None, block=10):
    """Estimate lim |<g, 2n>|^(1/n) from exact values for n <= n_max."""
    if values is None:
        values = scaled_sequence(g, (2,) * g.n_edges, n_max, tag)
    logs = []
    for n, v in enumerate(values):
        x = abs(v.to_mp()) if hasattr(v, "to_mp") else abs(mpmath.mpf(v))
        logs.append((n, float(mpmath.log(x)) if x > 0 else None))
    nz = [(n, l) for n, l in logs if l is not None and n >= 1]
    if len(nz) < 6:
        raise ParseError("too few nonzero terms for a spectral radius estimate")
    signs = [mpmath.sign(v.to_mp() if hasattr(v, "to_mp") else v) for v in values[1:]]
    sign_changes = sum(1 for a, b in zip(signs, signs[1:]) if a * b < 0)
    # block maxima of log|a_n| suppress the zeros of oscillating sequences
    start = max(1, n_max // 3)
    pts = []
    for b0 in range(start, n_max + 1, block):
        blk = [(n, l) for n, l in nz if b0 <= n < b0 + block]
        if blk:
            pts.append(max(blk, key=lambda p: p[1]))
    if len(pts) < 4:
        pts = [p for p in nz if p[0] >= start]
    ns = np.array([p[0] for p in pts], dtype=float)
    ls = np.array([p[1] for p in pts])
    X = np.column_stack([ns, np.log(ns), np.ones_like(ns)])
    coef, *_ = np.linalg.lstsq(X, ls, rcond=None)
    est = float(np.exp(coef[0]))
    # Richardson-accelerated log|a_n|/n as a diagnostic
    ratios = [(n, l / n) for n, l in pts]
    rich = []
    for (n1, r1), (n2, r2) in zip(ratios, ratios[1:]):
        rich.append((n2 * r2 - n1 * r1) / (n2 - n1))
    diag = {"slope": float(coef[0]), "log_n_coefficient": float(coef[1]),
            "sign_changes": sign_changes, "oscillating": sign_changes > len(signs) // 10,
            "richardson_tail": [float(np.exp(r)) for r in rich[-3:]], "points": len(pts)}
    return est, diag
