"""The acceptance suite: eleven end-to-end checks, each reporting pass/fail with details."""

import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from . import reference as ref
from .asymptotics import lambda_routes, ponzano_regge, sixj_expansion, spectral_radius_estimate
from .errors import NotFoundError, SpinNetError
from .evaluation import (chromatic_eval, closed_form_sixj, closed_form_theta, convert_normalization,
                         family_eval, i_factorial, penrose_state_sum, standard_value)
from .genfun import fourier_coefficients, spin_series_expand
from .geometry import cayley_menger, faces, is_degenerate, variational_polynomial
from .graph import admissible, insert_zero_edge, standard_graph
from .quadnum import QuadNum
from .recurrence import characteristic_roots, formal_solutions, guess_recurrence, sixj_series_data

SEED = 20240611


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self):
        return f"[{'PASS' if self.passed else 'FAIL'}] criterion {self.number:2d} {self.title}: {self.detail}"


def _colorings(g, max_color):
    for col in itertools.product(range(max_color + 1), repeat=g.n_edges):
        if admissible(g, col):
            yield col


def _u_value(labels, n):
    g = standard_graph("tetrahedron")
    gn = tuple(n * x for x in labels)
    return convert_normalization(standard_value(g, gn), g, gn, "U")


# ----------------------------------------------------------------------

def criterion_1():
    bad, count = [], 0
    for name, cmax in (("theta", 4), ("tetrahedron", 3)):
        g = standard_graph(name)
        for col in _colorings(g, cmax):
            count += 1
            lhs = penrose_state_sum(g, col).value
            rhs = i_factorial(g, col) * chromatic_eval(g, col).value
            if lhs != rhs:
                bad.append((name, col, lhs, rhs))
    return not bad, f"{count} colorings, {len(bad)} mismatches" + (f", first {bad[0]}" if bad else "")


def criterion_2():
    bad, n6, n3 = [], 0, 0
    tet = standard_graph("tetrahedron")
    for col in _colorings(tet, 6):
        n6 += 1
        if closed_form_sixj(col).value != chromatic_eval(tet, col).value:
            bad.append(("6j", col))
    th = standard_graph("theta")
    for col in _colorings(th, 10):
        n3 += 1
        if closed_form_theta(*col).value != chromatic_eval(th, col).value:
            bad.append(("theta", col))
    return not bad, f"{n6} tetrahedron and {n3} theta colorings, {len(bad)} mismatches"


def _series_check(g, D):
    s = spin_series_expand(g, D)
    bad, checked = 0, 0
    for k in itertools.product(range(D + 1), repeat=g.n_edges):
        if sum(k) > D:
            continue
        want = chromatic_eval(g, k).value if admissible(g, k) else 0
        checked += 1
        if s.coeff(k) != want:
            bad += 1
    return checked, bad


def criterion_3():
    parts, ok = [], True
    for name, D in (("theta", 12), ("tetrahedron", 8), ("k33", 6)):
        checked, bad = _series_check(standard_graph(name), D)
        ok &= bad == 0
        parts.append(f"{name} deg<={D}: {checked} monomials, {bad} bad")
    for name in ("theta", "tetrahedron"):
        fc = fourier_coefficients(standard_graph(name))
        planar_ok = fc == {(): Fraction(1)}
        ok &= planar_ok
        parts.append(f"{name} a_X trivial: {planar_ok}")
    return ok, "; ".join(parts)


def criterion_4():
    ok = True
    dets = {}
    for labels, want in ref.DETERMINANTS.items():
        d = cayley_menger(labels).det
        dets[labels] = d
        ok &= d == want
    rng = random.Random(SEED)
    count, bad = 0, 0
    while count < 1000:
        L = [rng.randint(0, 20) for _ in range(6)]
        if any(sum(t) % 2 or max(t) * 2 > sum(t) for t in faces(L)):
            continue
        count += 1
        E = variational_polynomial(L)
        E = E + [Fraction(0)] * (3 - len(E))
        D = E[1] ** 2 - 4 * E[2] * E[0]
        if D != -cayley_menger(L).det / 4:
            bad += 1
    ok &= bad == 0
    return ok, f"dets {[str(d) for d in dets.values()]}; D=-det/4 on {count} random sextuples, {bad} failures"


def criterion_5():
    parts, ok = [], True
    exp = sixj_expansion(ref.EUCLIDEAN_LABELS)
    got = {b.label: b.Lambda_exact for b in exp.branches}
    e_ok = all(got[s] == ref.EUCLIDEAN[s]["Lambda"] for s in "+-")
    parts.append(f"Euclidean exact {e_ok}")
    exp = sixj_expansion(ref.PLANE_LABELS)
    p_ok = all(b.Lambda_exact == QuadNum(-1) for b in exp.branches)
    parts.append(f"Plane -1 exact {p_ok}")
    exp = sixj_expansion(ref.MINKOWSKIAN_LABELS)
    lam = [b.Lambda for b in exp.contributing()]
    m_ok = len(lam) == 1 and abs(lam[0] - ref.MINKOWSKIAN_LAMBDA_FLOAT) < 1e-6
    parts.append(f"Minkowskian {mpmath.nstr(lam[0], 10) if lam else None}")
    rng = random.Random(SEED + 5)
    count, worst = 0, mpmath.mpf(0)
    while count < 200:
        L = [rng.randint(1, 16) for _ in range(6)]
        if any(sum(t) % 2 for t in faces(L)) or is_degenerate(L):
            continue
        try:
            routes = lambda_routes(L, 40)
        except SpinNetError:
            continue
        count += 1
        worst = max([worst] + [abs(a - b) for a, b in routes])
    r_ok = worst < 1e-10
    parts.append(f"angle vs product on {count} tetrahedra max diff {mpmath.nstr(worst, 3)}")
    ok = e_ok and p_ok and m_ok and r_ok
    return ok, "; ".join(parts)


def criterion_6():
    parts, ok = [], True
    for name, labels in (("Euclidean", ref.EUCLIDEAN_LABELS), ("Plane", ref.PLANE_LABELS),
                         ("Minkowskian", ref.MINKOWSKIAN_LABELS)):
        sols = sixj_series_data(labels, depth=6)["solutions"]
        for sign, want in ref.BRANCHES[labels].items():
            match = [s for s in sols if s.Lambda == want["Lambda"] and s.alpha == want["alpha"]]
            good = len(match) == 1 and match[0].mu[:7] == want["mu"]
            ok &= good
            parts.append(f"{name}{sign} {'exact' if good else 'MISMATCH'}")
    return ok, ", ".join(parts)


def criterion_7():
    parts, ok = [], True
    for name, labels in (("Euclidean", ref.EUCLIDEAN_LABELS), ("Plane", ref.PLANE_LABELS),
                         ("Minkowskian", ref.MINKOWSKIAN_LABELS)):
        seq = [Fraction(ref.closed_sequence(labels, n)) for n in range(81)]
        try:
            rec = guess_recurrence(seq[:40], r_max=2)
        except NotFoundError:
            ok = False
            parts.append(f"{name}: no order-2 recurrence supported by 40 terms")
            continue
        valid = rec.order == 2 and rec.annihilates(seq)
        roots = {r for r, _ in characteristic_roots(rec)}
        want = {b["Lambda"] for b in ref.BRANCHES[labels].values()}
        good = valid and want <= roots
        ok &= good
        parts.append(f"{name}: order {rec.order} degree {rec.degree}, validates {valid}, roots match {want <= roots}")
    return ok, "; ".join(parts)


def criterion_8():
    parts = []
    r100 = _pr_rel(100)
    r200 = _pr_rel(200)
    ok = r100 <= 0.05 and r200 <= 0.025
    parts.append(f"Ponzano-Regge rel err n=100 {mpmath.nstr(r100, 3)}, n=200 {mpmath.nstr(r200, 3)}")
    exp = sixj_expansion(ref.MINKOWSKIAN_LABELS)
    (b,) = exp.contributing()
    n = 100
    a = _u_value(ref.MINKOWSKIAN_LABELS, n).to_mp()
    scaled = abs(a) * abs(b.Lambda) ** (-n) * mpmath.mpf(n) ** 1.5
    rel = abs(scaled - abs(b.S)) / abs(b.S)
    ok &= rel <= 0.05
    parts.append(f"Minkowskian |a_n| Lambda^-n n^1.5 / |S| - 1 = {mpmath.nstr(rel, 3)} at n=100")
    return ok, "; ".join(parts)


def _pr_rel(n):
    exact = _u_value(ref.EUCLIDEAN_LABELS, n).to_mp()
    return abs(ponzano_regge(ref.EUCLIDEAN_LABELS, n) - exact) / abs(exact)


def criterion_9():
    tet, _ = spectral_radius_estimate(standard_graph("tetrahedron"), 300)
    th, _ = spectral_radius_estimate(standard_graph("theta"), 300)
    circ = [standard_value(standard_graph("circle"), (2 * n,)).value for n in range(40)]
    trend = all(circ[n] == 2 * n + 1 for n in range(40))
    cr, _ = spectral_radius_estimate(standard_graph("circle"), 200)
    ok = abs(tet / 729 - 1) <= 0.02 and abs(th / 27 - 1) <= 0.02 and trend and abs(cr - 1) < 0.01
    return ok, f"tetrahedron {tet:.3f}, theta {th:.4f}, circle {cr:.5f} (values 2n+1: {trend})"


def criterion_10():
    rng = random.Random(SEED + 10)
    graphs = [standard_graph(n) for n in ("theta", "tetrahedron", "k33")]
    flips, bad = 0, 0
    while flips < 200:
        g = rng.choice(graphs)
        cmax = 4 if g.n_edges <= 6 else 2
        col = tuple(rng.randint(0, cmax) for _ in range(g.n_edges))
        if not admissible(g, col) or not any(col):
            continue
        v = rng.randrange(len(g.vertices))
        a, b, c = (col[e] for e in g.vertex_edges(v))
        sign = (-1) ** ((a * (a - 1) + b * (b - 1) + c * (c - 1)) // 2)
        before = penrose_state_sum(g, col).value
        after = penrose_state_sum(g.flip_vertex(v), col).value
        flips += 1
        if after != sign * before:
            bad += 1
    tet = standard_graph("tetrahedron")
    sub, sub_bad = 0, 0
    for col in [(2,) * 6, (1, 1, 1, 1, 2, 2), (2, 2, 2, 2, 2, 0), (3, 3, 1, 1, 2, 2)]:
        if not admissible(tet, col):
            continue
        want = chromatic_eval(tet, col).value
        cmap = dict(zip(tet.edge_ids, col))
        for e1, e2 in (("a", "a"), ("a", "b"), ("c", "f")):
            for orient in ((0, 0), (1, 0)):
                ng, z, split = insert_zero_edge(tet, e1, e2, orient)
                known = dict(cmap)
                for old, halves in split:
                    for h in halves:
                        known[h] = known[old]
                ncol = {e: known[e] for e in ng.edge_ids if e != z}
                ncol[z] = 0
                sub += 1
                if chromatic_eval(ng, ncol).value != want:
                    sub_bad += 1
    ok = bad == 0 and sub_bad == 0
    return ok, f"{flips} flips with {bad} sign failures; {sub} subdivisions with {sub_bad} failures"


def criterion_11():
    parts, ok = [], True
    # color 0 is the empty network (value 1); the vanishing concerns positive colors
    d1 = standard_graph("drum1")
    drum1 = all(family_eval("drum", c, 1).value == 0 for c in range(1, 13)) and \
        all(chromatic_eval(d1, (c,) * d1.n_edges).value == 0 for c in range(1, 7))
    ok &= drum1
    parts.append(f"drum(1) vanishes for colors 1..12: {drum1}")
    k2, k6 = family_eval("k33", 2).value, family_eval("k33", 6).value
    ok &= k2 == 0 and k6 == 0
    parts.append(f"<K33,2>={k2}, <K33,6>={k6}")
    d3 = family_eval("drum", 4, 3).value
    d3c = chromatic_eval(standard_graph("drum3"), (4,) * standard_graph("drum3").n_edges).value
    k4 = family_eval("k33", 4).value
    k4c = chromatic_eval(standard_graph("k33"), (4,) * 9).value
    ok &= d3 == d3c and k4 == k4c
    parts.append(f"drum(3) color 4: {d3} vs {d3c}; K33 color 4: {k4} vs {k4c}")
    return ok, "; ".join(parts)


CRITERIA = [
    (1, "state sum equals I! times chromatic evaluation", criterion_1),
    (2, "closed forms for theta and 6j", criterion_2),
    (3, "spin generating function coefficients", criterion_3),
    (4, "Cayley-Menger determinants and discriminant", criterion_4),
    (5, "growth rates", criterion_5),
    (6, "formal series coefficients", criterion_6),
    (7, "recurrence from 40 terms", criterion_7),
    (8, "leading-order numerics", criterion_8),
    (9, "spectral radius", criterion_9),
    (10, "sign lemmas", criterion_10),
    (11, "drum and K33 families", criterion_11),
]


def run_criterion(number):
    for num, title, fn in CRITERIA:
        if num == number:
            t = time.time()
            try:
                passed, detail = fn()
            except SpinNetError as exc:
                passed, detail = False, f"{exc.category} error: {exc}"
            return CriterionResult(num, title, bool(passed), detail, time.time() - t)
    raise KeyError(number)


def run_all(numbers=None, stream=None):
    results = []
    for num, _, _ in CRITERIA:
        if numbers and num not in numbers:
            continue
        r = run_criterion(num)
        results.append(r)
        if stream is not None:
            print(r.line(), file=stream, flush=True)
    return results
