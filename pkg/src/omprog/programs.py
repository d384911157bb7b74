"""Oriented matroid programs: a matroid with an infinity element g and an
objective element f.

The central object is the cocircuit graph on the g-positive cocircuits, with
edges between conformal comodular pairs directed by the edge direction
function (signs ordered - below 0 below +, directions pointing toward larger
objective values). A program is Euclidean when this graph has no directed
cycle; Euclideanness drives everything downstream (parallel extensions,
sweeps, shellings).
"""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from omprog.om import OrientedMatroid
from omprog.signs import SignVector


class ProgramError(ValueError):
    """Base for named program precondition failures."""


class InfeasibleError(ProgramError):
    pass


class UnboundedError(ProgramError):
    pass


class NotEuclideanError(ProgramError):
    pass


class Program:
    """An oriented matroid program (om, g, f) with cached derived structure."""

    def __init__(self, om: OrientedMatroid, g: str, f: str):
        if f == g:
            raise ProgramError("objective and infinity element must differ")
        self.om = om
        self.g = g
        self.f = f
        self.gpos = om.position(g)
        self.fpos = om.position(f)
        if g in om.loops():
            raise ProgramError(f"infinity element {g!r} is a loop")
        if f in om.coloops():
            raise ProgramError(f"objective element {f!r} is a coloop")
        self._graph: CocircuitGraph | None = None
        self._graph_minus_f: CocircuitGraph | None = None
        self._deletion: tuple[OrientedMatroid, dict[SignVector, SignVector]] | None = None
        self._euclidean: tuple[bool, DirectedCycleWitness | None] | None = None

    def __repr__(self) -> str:
        return f"Program(g={self.g!r}, f={self.f!r}, {self.om!r})"

    def g_positive_cocircuits(self) -> list[SignVector]:
        return [v for v in self.om.cocircuits if v.sign(self.gpos) > 0]

    def graph(self) -> CocircuitGraph:
        if self._graph is None:
            self._graph = build_graph(self)
        return self._graph

    def graph_minus_f(self) -> CocircuitGraph:
        if self._graph_minus_f is None:
            self._graph_minus_f = build_graph_minus_f(self)
        return self._graph_minus_f

    def deletion(self) -> tuple[OrientedMatroid, dict[SignVector, SignVector]]:
        if self._deletion is None:
            self._deletion = delete_objective(self)
        return self._deletion

    def swept_cocircuits(self) -> list[SignVector]:
        """Lifts into the full matroid of the g-positive cocircuits of the
        deletion of the objective: the vertex set every sweep orders."""
        graph = self.graph_minus_f()
        _, lifts = self.deletion()
        return [lifts[w] for w in graph.vertices]

    def euclidean(self) -> tuple[bool, DirectedCycleWitness | None]:
        if self._euclidean is None:
            witness = find_directed_cycle(self.graph())
            self._euclidean = (witness is None, witness)
        return self._euclidean

    def require_euclidean(self) -> None:
        ok, witness = self.euclidean()
        if not ok:
            raise NotEuclideanError(f"program is not Euclidean: {witness}")

    def feasible_cocircuits(self) -> list[SignVector]:
        return [v for v in self.g_positive_cocircuits() if self._feasible_signs(v)]

    def _feasible_signs(self, x: SignVector) -> bool:
        free = (1 << self.fpos) | (1 << self.gpos)
        return not (x.neg & ~free) and x.sign(self.gpos) > 0


def edge_direction(p: Program, x: SignVector, y: SignVector) -> int:
    """Direction of the edge from x to y: +1 when the objective grows, -1 when
    it falls, 0 when the edge is level.

    For two cocircuits sharing the same nonzero g-sign this eliminates g
    between -x and y and reads the objective sign of the resulting cocircuit.
    When exactly one of the two vanishes at g, the g-zero one is at infinity
    and its own objective sign decides (negated when it is x).
    """
    om = p.om
    xg = x.sign(p.gpos)
    yg = y.sign(p.gpos)
    if xg == 0 and yg == 0:
        raise ProgramError("both cocircuits vanish at the infinity element")
    if xg != 0 and yg != 0:
        if xg != yg:
            raise ProgramError("cocircuits carry opposite signs at the infinity element")
        z = om.eliminate(-x, y, p.g)
        return z.sign(p.fpos)
    if not om.is_comodular(x, y):
        raise ProgramError("edge direction requires a comodular pair")
    if yg == 0:
        return y.sign(p.fpos)
    return -x.sign(p.fpos)


@dataclass(frozen=True)
class CocircuitGraph:
    """Graph on g-positive cocircuits; an edge label is +1 for an edge directed
    from the lower-index vertex to the higher, -1 for the reverse, 0 for an
    undirected edge."""

    om: OrientedMatroid
    vertices: tuple[SignVector, ...]
    edges: tuple[tuple[int, int, int], ...]

    def index(self, x: SignVector) -> int:
        try:
            return self.vertices.index(x)
        except ValueError:
            raise ValueError(f"{x} is not a vertex of the graph") from None

    def digraph(self) -> nx.DiGraph:
        """Arc view: strict edges one way, undirected edges both ways."""
        d = nx.DiGraph()
        d.add_nodes_from(range(len(self.vertices)))
        for i, j, lab in self.edges:
            if lab >= 0:
                d.add_edge(i, j)
            if lab <= 0:
                d.add_edge(j, i)
        return d

    def strict_arcs(self) -> list[tuple[int, int]]:
        out = []
        for i, j, lab in self.edges:
            if lab > 0:
                out.append((i, j))
            elif lab < 0:
                out.append((j, i))
        return out

    def label_between(self, i: int, j: int) -> int | None:
        """Label of the edge between vertex indices i and j oriented from i to
        j, or None when they are not adjacent."""
        for a, b, lab in self.edges:
            if (a, b) == (i, j):
                return lab
            if (a, b) == (j, i):
                return -lab
        return None


def build_graph(p: Program) -> CocircuitGraph:
    """The cocircuit graph of the program: vertices are the g-positive
    cocircuits, edges the conformal comodular pairs, labels from the edge
    direction function."""
    om = p.om
    vertices = tuple(sorted(p.g_positive_cocircuits(), key=str))
    edges = []
    for i in range(len(vertices)):
        x = vertices[i]
        for j in range(i + 1, len(vertices)):
            y = vertices[j]
            if x.separation_mask(y):
                continue
            if not om.comodular_mask(x.zero_mask, y.zero_mask):
                continue
            edges.append((i, j, edge_direction(p, x, y)))
    return CocircuitGraph(om, vertices, tuple(edges))


def delete_objective(p: Program) -> tuple[OrientedMatroid, dict[SignVector, SignVector]]:
    """The deletion of f from the program's matroid, together with the map
    sending each deletion cocircuit to its unique full cocircuit."""
    om = p.om
    deletion = om.minor(delete=[p.f])
    keep = [i for i in range(om.n) if i != p.fpos]
    lifts: dict[SignVector, SignVector] = {}
    restriction = {}
    for v in om.cocircuits:
        restriction.setdefault(v.restrict(keep), v)
    for w in deletion.cocircuits:
        lift = restriction.get(w)
        if lift is None:
            raise RuntimeError(f"no cocircuit restricts to {w}; invalid cocircuit set")
        lifts[w] = lift
    return deletion, lifts


def build_graph_minus_f(p: Program) -> CocircuitGraph:
    """The cocircuit graph after deleting the objective element.

    Vertices are the g-positive cocircuits of the deletion. Pairs that are
    conformal already before deleting f inherit their label from the full
    graph; pairs separated exactly by f get a strict edge from the vertex with
    the smaller objective value toward the larger (signs ordered - below 0
    below +), matching the direction every inherited strict edge has.
    """
    deletion, lifts = p.deletion()
    gpos_del = deletion.position(p.g)
    vertices = tuple(sorted((w for w in deletion.cocircuits if w.sign(gpos_del) > 0), key=str))
    edges = []
    for i in range(len(vertices)):
        wx = vertices[i]
        for j in range(i + 1, len(vertices)):
            wy = vertices[j]
            if wx.separation_mask(wy):
                continue
            if not deletion.comodular_mask(wx.zero_mask, wy.zero_mask):
                continue
            lx, ly = lifts[wx], lifts[wy]
            if lx.separation_mask(ly):
                lab = 1 if lx.sign(p.fpos) < ly.sign(p.fpos) else -1
            else:
                lab = edge_direction(p, lx, ly)
            edges.append((i, j, lab))
    return CocircuitGraph(deletion, vertices, tuple(edges))


@dataclass(frozen=True)
class DirectedCycleWitness:
    """A closed path with at least one strictly directed edge and no
    counter-directed edge; the cycle repeats its first vertex at the end."""

    cycle: tuple[SignVector, ...]
    strict_edge_index: int

    def as_dict(self) -> dict:
        return {
            "cycle": [str(v) for v in self.cycle],
            "strict_edge_index": self.strict_edge_index,
        }


def find_directed_cycle(g: CocircuitGraph) -> DirectedCycleWitness | None:
    """Search for a directed cycle: collapse undirected edges into two-way
    arcs, compute strongly connected components, pick the lowest-index
    component containing a strictly directed edge, and return the shortest
    cycle through such an edge (breadth-first)."""
    d = g.digraph()
    strict = g.strict_arcs()
    if not strict:
        return None
    components = sorted(nx.strongly_connected_components(d), key=min)
    for comp in components:
        inside = [(u, v) for (u, v) in strict if u in comp and v in comp]
        if not inside:
            continue
        sub = d.subgraph(comp)
        best: list[int] | None = None
        for u, v in sorted(inside):
            try:
                path = nx.shortest_path(sub, v, u)
            except nx.NetworkXNoPath:
                continue
            cycle = [u, v] + list(path[1:])
            if best is None or len(cycle) < len(best):
                best = cycle
        if best is not None:
            return DirectedCycleWitness(tuple(g.vertices[i] for i in best), 0)
    return None


def is_euclidean_program(p: Program) -> tuple[bool, DirectedCycleWitness | None]:
    """True when the program's cocircuit graph has no directed cycle."""
    return p.euclidean()


def is_euclidean_om(om: OrientedMatroid) -> tuple[bool, dict | None]:
    """True when every admissible program (g not a loop, f not a coloop,
    f distinct from g) is Euclidean; otherwise the first failing pair with its
    cycle witness."""
    loops = om.loops()
    coloops = om.coloops()
    for g in om.elements:
        if g in loops:
            continue
        for f in om.elements:
            if f == g or f in coloops:
                continue
            ok, witness = Program(om, g, f).euclidean()
            if not ok:
                return False, {"g": g, "f": f, "witness": witness}
    return True, None


def feasible_region(p: Program) -> tuple[SignVector, ...]:
    """Covectors with positive infinity sign that are nonnegative away from
    the objective and infinity elements (the objective is unconstrained)."""
    free = (1 << p.fpos) | (1 << p.gpos)
    out = [
        x
        for x in p.om.covectors().faces
        if x.sign(p.gpos) > 0 and not (x.neg & ~free)
    ]
    return tuple(sorted(out, key=str))


def is_feasible(p: Program) -> bool:
    return bool(p.feasible_cocircuits())

def is_bounded(p: Program) -> bool:
    """True when no nonzero cocircuit vanishes at infinity while staying
    nonnegative on every element, the objective included (such a cocircuit is
    an unbounded feasible ray along which the objective never falls)."""
    for x in p.om.cocircuits:
        if x.sign(p.gpos) == 0 and x.neg == 0 and not x.is_zero():
            return False
    return True


def optima(p: Program) -> tuple[tuple[SignVector, ...], tuple[SignVector, ...]]:
    """Minimal and maximal solutions: feasible cocircuits with no strictly
    improving edge into them (minima) or out of them (maxima) in the cocircuit
    graph restricted to the feasible region."""
    if not is_feasible(p):
        raise InfeasibleError("infeasible")
    if not is_bounded(p):
        raise UnboundedError("unbounded")
    p.require_euclidean()
    graph = p.graph()
    feas = [v for v in graph.vertices if p._feasible_signs(v)]
    feas_idx = {graph.index(v) for v in feas}
    incoming = {i: 0 for i in feas_idx}
    outgoing = {i: 0 for i in feas_idx}
    for u, v in graph.strict_arcs():
        if u in feas_idx and v in feas_idx:
            outgoing[u] += 1
            incoming[v] += 1
    mins = tuple(sorted((graph.vertices[i] for i in feas_idx if incoming[i] == 0), key=str))
    maxs = tuple(sorted((graph.vertices[i] for i in feas_idx if outgoing[i] == 0), key=str))
    return mins, maxs


def condensation(graph: CocircuitGraph) -> tuple[dict[int, int], dict[int, frozenset[int]]]:
    """Strongly connected components of the arc view and reflexive-transitive
    reachability between them. For a Euclidean program the components are
    exactly the undirected-path classes."""
    d = graph.digraph()
    comps = sorted(nx.strongly_connected_components(d), key=min)
    comp_of: dict[int, int] = {}
    for cid, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = cid
    dag = nx.DiGraph()
    dag.add_nodes_from(range(len(comps)))
    for u, v in d.edges():
        cu, cv = comp_of[u], comp_of[v]
        if cu != cv:
            dag.add_edge(cu, cv)
    reach: dict[int, frozenset[int]] = {}
    for cid in range(len(comps)):
        reach[cid] = frozenset(nx.descendants(dag, cid) | {cid})
    return comp_of, reach
