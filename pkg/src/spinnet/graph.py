"""Cubic ribbon graphs, curves and crossing parity."""

import math
import re
from dataclasses import dataclass, field
from itertools import combinations

from .errors import CapacityError, InvalidCurveError, ParseError

MAX_CURVES = 2 ** 20


@dataclass(frozen=True)
class RibbonGraph:
    """Trivalent graph with a counterclockwise cyclic order at each vertex.

    ``vertices`` is a tuple of (vid, (h1, h2, h3)); ``edges`` is a tuple of
    (eid, (h, h')); ``free_loops`` holds the ids of vertexless circles.
    Edge index i < len(edges) refers to edges[i]; the free loops follow.
    """

    vertices: tuple
    edges: tuple
    free_loops: tuple = ()
    _where: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        where = {}  # half-edge -> (vertex index, cyclic position)
        for vi, (vid, hs) in enumerate(self.vertices):
            if len(hs) != 3:
                raise ParseError(f"vertex arity: vertex {vid} has {len(hs)} half-edges")
            for j, h in enumerate(hs):
                if h in where:
                    raise ParseError(f"duplicate half-edge {h}")
                where[h] = (vi, j)
        edge_of = {}
        for ei, (eid, hs) in enumerate(self.edges):
            if len(hs) != 2:
                raise ParseError(f"edge {eid} must pair two half-edges")
            for side, h in enumerate(hs):
                if h not in where:
                    raise ParseError(f"dangling half-edge {h} in edge {eid}")
                if h in edge_of:
                    raise ParseError(f"half-edge {h} used by two edges")
                edge_of[h] = (ei, side)
        for h in where:
            if h not in edge_of:
                raise ParseError(f"dangling half-edge {h}")
        ids = [e for e, _ in self.edges] + list(self.free_loops)
        if len(set(ids)) != len(ids):
            raise ParseError("duplicate edge identifiers")
        if len({v for v, _ in self.vertices}) != len(self.vertices):
            raise ParseError("duplicate vertex identifiers")
        object.__setattr__(self, "_where", {"vertex": where, "edge": edge_of})

    # basic structure -------------------------------------------------
    @property
    def edge_ids(self):
        """All edge ids: ordinary edges then free loops."""
        return tuple(e for e, _ in self.edges) + tuple(self.free_loops)

    @property
    def n_edges(self):
        return len(self.edges) + len(self.free_loops)

    def half_edge_vertex(self, h):
        return self._where["vertex"][h]

    def half_edge_edge(self, h):
        """(edge index, side) where side 0 is the first listed half-edge."""
        return self._where["edge"][h]

    def vertex_edges(self, vi):
        """Edge indices at vertex vi in cyclic order (a loop edge appears twice)."""
        return tuple(self._where["edge"][h][0] for h in self.vertices[vi][1])

    def colors(self, gamma):
        """Normalize a coloring (dict by edge id or sequence) to a tuple."""
        if isinstance(gamma, dict):
            unknown = set(gamma) - set(self.edge_ids)
            if unknown:
                raise ParseError(f"unknown edge ids in coloring: {sorted(unknown)}")
            out = tuple(int(gamma.get(e, 0)) for e in self.edge_ids)
        else:
            out = tuple(int(x) for x in gamma)
            if len(out) != self.n_edges:
                raise ParseError(f"coloring has {len(out)} entries, graph has {self.n_edges} edges")
        if any(x < 0 for x in out):
            raise ParseError("colors must be natural numbers")
        return out

    def vertex_colors(self, gamma):
        g = self.colors(gamma)
        return [tuple(g[e] for e in self.vertex_edges(vi)) for vi in range(len(self.vertices))]

    def faces(self):
        """Number of boundary components of the ribbon surface (vertex part)."""
        nxt = {}
        for _, hs in self.vertices:
            for j in range(3):
                nxt[hs[j]] = hs[(j + 1) % 3]
        other = {}
        for _, (h, k) in self.edges:
            other[h], other[k] = k, h
        seen, count = set(), 0
        for h in nxt:
            if h in seen:
                continue
            count += 1
            x = h
            while x not in seen:
                seen.add(x)
                x = nxt[other[x]]
        return count

    def components(self):
        parent = list(range(len(self.vertices)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for _, (h, k) in self.edges:
            a, b = find(self.half_edge_vertex(h)[0]), find(self.half_edge_vertex(k)[0])
            parent[a] = b
        return len({find(v) for v in range(len(self.vertices))}) + len(self.free_loops)

    def genus(self):
        """Genus of the ribbon surface (sum over vertex-bearing components)."""
        comps = self.components() - len(self.free_loops)
        chi = len(self.vertices) - len(self.edges) + self.faces()
        return (2 * comps - chi) // 2

    def flip_vertex(self, vi):
        """Reverse the cyclic order at vertex vi."""
        verts = list(self.vertices)
        vid, (a, b, c) = verts[vi]
        verts[vi] = (vid, (a, c, b))
        return RibbonGraph(tuple(verts), self.edges, self.free_loops)


# ----------------------------------------------------------------------
# text format

_LINE = re.compile(r"^(vertex|edge|freeloop)\s+([^:\s]+)\s*(?::\s*(.*))?$")


def parse_graph(text):
    verts, edges, loops = [], [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _LINE.match(line)
        if not m:
            raise ParseError(f"line {lineno}: cannot parse {raw!r}")
        kind, name, rest = m.groups()
        toks = rest.split() if rest else []
        if kind == "vertex":
            if len(toks) != 3:
                raise ParseError(f"line {lineno}: vertex arity: {name} has {len(toks)} half-edges")
            verts.append((name, tuple(toks)))
        elif kind == "edge":
            if len(toks) != 2:
                raise ParseError(f"line {lineno}: edge {name} must list two half-edges")
            edges.append((name, tuple(toks)))
        else:
            if toks:
                raise ParseError(f"line {lineno}: freeloop takes no half-edges")
            loops.append(name)
    try:
        return RibbonGraph(tuple(verts), tuple(edges), tuple(loops))
    except ParseError as exc:
        raise ParseError(f"{exc}") from None


def format_graph(g):
    lines = [f"vertex {v}: {' '.join(hs)}" for v, hs in g.vertices]
    lines += [f"edge {e}: {h} {k}" for e, (h, k) in g.edges]
    lines += [f"freeloop {lid}" for lid in g.free_loops]
    return "\n".join(lines) + "\n"


def parse_coloring(text, g=None):
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if len(toks) != 2:
            raise ParseError(f"line {lineno}: expected '<eid> <color>'")
        try:
            c = int(toks[1])
        except ValueError:
            raise ParseError(f"line {lineno}: color {toks[1]!r} is not an integer") from None
        if c < 0:
            raise ParseError(f"line {lineno}: negative color")
        if toks[0] in out:
            raise ParseError(f"line {lineno}: duplicate edge {toks[0]}")
        out[toks[0]] = c
    if g is not None:
        g.colors(out)
    return out


# ----------------------------------------------------------------------
# builders for the standard examples

def from_planar_drawing(points, edge_list):
    """Straight-line planar drawing -> ribbon graph with ccw orders.

    points: {vid: (x, y)}; edge_list: [(eid, u, v)].
    """
    inc = {v: [] for v in points}
    edges = []
    for eid, u, v in edge_list:
        h, k = f"{eid}.{u}", f"{eid}.{v}"
        edges.append((eid, (h, k)))
        for a, b, hh in ((u, v, h), (v, u, k)):
            dx, dy = points[b][0] - points[a][0], points[b][1] - points[a][1]
            inc[a].append((math.atan2(dy, dx), hh))
    verts = tuple((v, tuple(h for _, h in sorted(inc[v]))) for v in points)
    return RibbonGraph(verts, tuple(edges))


def theta_graph():
    """Two vertices joined by edges e1 (top), e2 (middle), e3 (bottom)."""
    return RibbonGraph(
        (("L", ("e3L", "e2L", "e1L")), ("R", ("e1R", "e2R", "e3R"))),
        (("e1", ("e1L", "e1R")), ("e2", ("e2L", "e2R")), ("e3", ("e3L", "e3R"))),
    )


def tetrahedron_graph():
    """Planar tetrahedron with edges a..f, vertices 1..4 = (abe),(acf),(cde),(bdf)."""
    pts = {"1": (0.0, 1.0), "2": (-1.0, -1.0), "3": (1.0, -1.0), "4": (0.0, -0.2)}
    return from_planar_drawing(pts, [("a", "1", "2"), ("b", "1", "4"), ("c", "2", "3"),
                                     ("d", "3", "4"), ("e", "1", "3"), ("f", "2", "4")])


def k33_graph():
    """Hexagon plus the three long diagonals (ribbon structure of the drawing)."""
    pts = {str(i): (math.cos(i * math.pi / 3), math.sin(i * math.pi / 3)) for i in range(6)}
    el = [(f"h{i}", str(i), str((i + 1) % 6)) for i in range(6)]
    el += [(f"d{i}", str(i), str(i + 3)) for i in range(3)]
    # straight diagonals all pass through the centre, which is fine for cyclic orders
    return from_planar_drawing(pts, el)


def drum_graph(s):
    """Prism over an s-gon: two concentric s-cycles joined by spokes.

    s=1 and s=2 give the degenerate drums built from loops and multi-edges.
    """
    if s >= 3:
        pts = {}
        for i in range(s):
            t = 2 * math.pi * i / s
            pts[f"o{i}"] = (2 * math.cos(t), 2 * math.sin(t))
            pts[f"i{i}"] = (math.cos(t), math.sin(t))
        el = [(f"out{i}", f"o{i}", f"o{(i + 1) % s}") for i in range(s)]
        el += [(f"in{i}", f"i{i}", f"i{(i + 1) % s}") for i in range(s)]
        el += [(f"sp{i}", f"o{i}", f"i{i}") for i in range(s)]
        return from_planar_drawing(pts, el)
    if s == 2:
        # outer 2-cycle, inner 2-cycle, two spokes
        verts = (("o0", ("sp0o", "outAo0", "outBo0")), ("o1", ("sp1o", "outBo1", "outAo1")),
                 ("i0", ("sp0i", "inBi0", "inAi0")), ("i1", ("sp1i", "inAi1", "inBi1")))
        edges = (("outA", ("outAo0", "outAo1")), ("outB", ("outBo1", "outBo0")),
                 ("inA", ("inAi0", "inAi1")), ("inB", ("inBi1", "inBi0")),
                 ("sp0", ("sp0o", "sp0i")), ("sp1", ("sp1o", "sp1i")))
        return RibbonGraph(verts, edges)
    if s == 1:
        # dumbbell: a loop at each end joined by a spoke
        verts = (("o0", ("sp0o", "outa", "outb")), ("i0", ("sp0i", "inb", "ina")))
        edges = (("out0", ("outa", "outb")), ("in0", ("ina", "inb")), ("sp0", ("sp0o", "sp0i")))
        return RibbonGraph(verts, edges)
    raise ValueError("drum needs s >= 1")


def circle_graph():
    return RibbonGraph((), (), ("o",))


STANDARD_GRAPHS = {
    "theta": theta_graph,
    "tetrahedron": tetrahedron_graph,
    "k33": k33_graph,
    "circle": circle_graph,
    "cube": lambda: drum_graph(4),
}


def standard_graph(name):
    name = name.lower()
    if name.startswith("drum"):
        return drum_graph(int(name[4:] or 3))
    if name not in STANDARD_GRAPHS:
        raise ParseError(f"unknown graph name {name!r}")
    return STANDARD_GRAPHS[name]()


# ----------------------------------------------------------------------
# admissibility

def admissible_triple(a, b, c):
    return (a + b + c) % 2 == 0 and a <= b + c and b <= a + c and c <= a + b


def admissible(g, gamma):
    return all(admissible_triple(*t) for t in g.vertex_colors(gamma))


# ----------------------------------------------------------------------
# curves

def _vertex_degrees(g, edge_set):
    deg = [0] * len(g.vertices)
    for ei in edge_set:
        if ei < len(g.edges):
            for h in g.edges[ei][1]:
                deg[g.half_edge_vertex(h)[0]] += 1
    return deg


def is_curve(g, edge_set):
    return all(d in (0, 2) for d in _vertex_degrees(g, edge_set))


def cycle_space_dimension(g):
    return len(g.edges) - len(g.vertices) + g.components()


def curves(g):
    """All 2-regular subgraphs as sorted index tuples, lexicographically ordered."""
    dim = cycle_space_dimension(g)
    if 2 ** dim > MAX_CURVES:
        raise CapacityError(f"{2 ** dim} curves exceed the cap of {MAX_CURVES}")
    ne = len(g.edges)
    last_use = [0] * len(g.vertices)  # last edge index touching each vertex
    ends = []
    for ei, (_, (h, k)) in enumerate(g.edges):
        a, b = g.half_edge_vertex(h)[0], g.half_edge_vertex(k)[0]
        ends.append((a, b))
        last_use[a] = max(last_use[a], ei)
        last_use[b] = max(last_use[b], ei)
    closing = [[] for _ in range(ne)]
    for v, ei in enumerate(last_use):
        closing[ei].append(v)
    found = []
    deg = [0] * len(g.vertices)
    chosen = []

    def rec(i):
        if i == ne:
            found.append(tuple(chosen))
            return
        a, b = ends[i]
        for take in (0, 1):
            if take:
                deg[a] += 1
                deg[b] += 1
                chosen.append(i)
            if deg[a] <= 2 and deg[b] <= 2 and all(deg[v] in (0, 2) for v in closing[i]):
                rec(i + 1)
            if take:
                deg[a] -= 1
                deg[b] -= 1
                chosen.pop()

    rec(0)
    # free loops are curves on their own and combine freely
    for li in range(len(g.free_loops)):
        idx = ne + li
        found = found + [tuple(sorted(c + (idx,))) for c in found]
    return sorted(found)


# ----------------------------------------------------------------------
# crossing parity

def _chords(g, copies, slots):
    """Per vertex, the chords (pairs of boundary keys) drawn by the copies."""
    per_vertex = {}
    for k, c in enumerate(copies):
        for ei in c:
            if ei >= len(g.edges):
                continue
            s = slots[(k, ei)]
            for side, h in enumerate(g.edges[ei][1]):
                vi, j = g.half_edge_vertex(h)
                key = (j, s if side == 0 else -s)
                per_vertex.setdefault((vi, k), []).append(key)
    by_vertex = {}
    for (vi, k), keys in per_vertex.items():
        by_vertex.setdefault(vi, []).append(tuple(keys))
    return by_vertex


def _interleaved(c1, c2):
    a, b = sorted(c1)
    x, y = c2
    return (a < x < b) != (a < y < b)


def crossing_parity(g, copies, slots=None):
    """Parity of the crossings of a multiset of curves drawn on the ribbon surface.

    ``slots`` optionally maps (copy index, edge index) to a distinct slot value
    within each edge band; the default uses the copy index.
    """
    copies = [tuple(c) for c in copies]
    for c in copies:
        if not is_curve(g, c):
            raise InvalidCurveError(f"{c} is not a 2-regular subgraph")
    if slots is None:
        slots = {(k, ei): k + 1 for k, c in enumerate(copies) for ei in c}
    total = 0
    for chords in _chords(g, copies, slots).values():
        for c1, c2 in combinations(chords, 2):
            total += _interleaved(c1, c2)
    return total % 2


def pair_parity_matrix(g, cs=None):
    """cp[i][j] = crossing parity of the pair (curve i, curve j)."""
    cs = curves(g) if cs is None else cs
    n = len(cs)
    cp = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            cp[i][j] = cp[j][i] = crossing_parity(g, [cs[i], cs[j]])
    return cp


# ----------------------------------------------------------------------
# edits used by the sign lemmas

def insert_zero_edge(g, e1, e2, orient=(0, 0)):
    """Subdivide edges e1 and e2 (may coincide) and join the new vertices by an edge.

    Returns (new graph, id of the new edge, list of (old id, half ids)).
    The caller colors the halves like the original edge and the new edge by 0.
    When e1 == e2 the second subdivision acts on the second half of the first.
    """
    verts = list(g.vertices)
    edges = {eid: hs for eid, hs in g.edges}
    order = [eid for eid, _ in g.edges]
    split = []
    target = e1
    for tag, o in (("x", orient[0]), ("y", orient[1])):
        h, k = edges.pop(target)
        i = order.index(target)
        p, q = f"{target}{tag}1", f"{target}{tag}2"
        order[i:i + 1] = [p, q]
        hp, hq, hz = f"{p}~", f"{q}~", f"z{tag}"
        edges[p] = (h, hp)
        edges[q] = (hq, k)
        verts.append((f"v{tag}{target}", (hp, hq, hz) if o == 0 else (hp, hz, hq)))
        split.append((target, (p, q)))
        target = q if e1 == e2 else e2
    edges["z"] = ("zx", "zy")
    order.append("z")
    ng = RibbonGraph(tuple(verts), tuple((e, edges[e]) for e in order), g.free_loops)
    return ng, "z", split
