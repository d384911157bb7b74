"""Topological sweeps of a Euclidean program.

A sweep realizes a linear order on the swept vertices, the g-positive
cocircuits of the deletion of the objective (each represented by its unique
lift into the full matroid), by a chain of parallel extensions: one new
element per vertex, each parallel to the objective and passing through its
vertex. Cocircuits of the full matroid that vanish on the objective drop out
of the deletion and are never swept; their mutual level ties are what would
otherwise make every sweep degenerate. The certificate of a correct sweep is
the staircase: vertex j sits on the zero set of its own new element, on the
positive side of every earlier one and the negative side of every later one.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from omprog.extend import Localization, extend, parallel_localization
from omprog.om import OrientedMatroid, validate_cocircuits
from omprog.programs import NotEuclideanError, Program, condensation
from omprog.signs import SignVector


class SweepError(ValueError):
    pass


class DegenerateSweepError(SweepError):
    pass


@dataclass(frozen=True)
class DirectionPoset:
    """Partial order on the g-positive cocircuits of the deletion of the
    objective: the transitive closure of the strictly directed edges."""

    vertices: tuple[SignVector, ...]
    after: dict[SignVector, frozenset[SignVector]]

    def less(self, a: SignVector, b: SignVector) -> bool:
        return b in self.after[a]

    def leq(self, a: SignVector, b: SignVector) -> bool:
        return a == b or self.less(a, b)

    def is_linear_extension(self, seq) -> bool:
        order = list(seq)
        if sorted(order, key=str) != sorted(self.vertices, key=str):
            return False
        seen: set[SignVector] = set()
        for v in order:
            if any(self.less(v, w) for w in seen):
                return False
            seen.add(v)
        return True


def direction_poset(p: Program) -> DirectionPoset:
    """Order the vertices of the deletion graph by reachability along strictly
    directed edges. Euclideanness makes the relation antisymmetric."""
    p.require_euclidean()
    graph = p.graph_minus_f()
    k = len(graph.vertices)
    adjacency: list[set[int]] = [set() for _ in range(k)]
    for u, v in graph.strict_arcs():
        adjacency[u].add(v)
    closed: list[set[int]] = []
    for start in range(k):
        seen: set[int] = set()
        stack = list(adjacency[start])
        while stack:
            w = stack.pop()
            if w in seen:
                continue
            seen.add(w)
            stack.extend(adjacency[w])
        closed.append(seen)
    for u in range(k):
        for v in closed[u]:
            if u in closed[v]:
                raise NotEuclideanError("direction relation contains a cycle")
    after = {
        graph.vertices[u]: frozenset(graph.vertices[w] for w in closed[u])
        for u in range(k)
    }
    return DirectionPoset(graph.vertices, after)


def sweep_preorder(p: Program) -> tuple[dict[SignVector, int], dict[int, frozenset[int]]]:
    """Reachability preorder on the swept vertices, keyed by their lifts into
    the full matroid: vertices joined by undirected paths share a class,
    classes are ordered by directed reachability.

    Reachability is taken in the full cocircuit graph, not in the deletion
    graph. Cocircuits vanishing at the objective are never swept, but paths
    through them constrain pairs of swept vertices that the deletion graph
    leaves incomparable, and a sweep violating such a constraint has no
    monotone staircase."""
    graph = p.graph()
    comp_idx, reach = condensation(graph)
    comp_of = {v: comp_idx[graph.index(v)] for v in p.swept_cocircuits()}
    return comp_of, reach


def _strictly_precedes(comp_of, reach, x: SignVector, y: SignVector) -> bool:
    cx, cy = comp_of[x], comp_of[y]
    return cx != cy and cy in reach[cx]


def linearize_preorder(comp_of, reach, pool) -> list[SignVector]:
    """Deterministic linear extension of a reachability preorder over the
    given vertices, breaking ties by sign-string order."""
    pool = list(pool)
    indegree = {v: 0 for v in pool}
    successors: dict[SignVector, list[SignVector]] = {v: [] for v in pool}
    for x in pool:
        for y in pool:
            if x is not y and _strictly_precedes(comp_of, reach, x, y):
                successors[x].append(y)
                indegree[y] += 1
    heap = [str(v) for v in pool if indegree[v] == 0]
    heapq.heapify(heap)
    by_str = {str(v): v for v in pool}
    out = []
    while heap:
        v = by_str[heapq.heappop(heap)]
        out.append(v)
        for w in successors[v]:
            indegree[w] -= 1
            if indegree[w] == 0:
                heapq.heappush(heap, str(w))
    if len(out) != len(pool):
        raise NotEuclideanError("preorder contains a cycle")
    return out


def is_sweep_linear_extension(p: Program, order) -> bool:
    """True when the order lists every swept vertex once and never places a
    vertex after one it strictly precedes."""
    seq = list(order)
    if sorted(seq, key=str) != sorted(p.swept_cocircuits(), key=str):
        return False
    comp_of, reach = sweep_preorder(p)
    seen: list[SignVector] = []
    for v in seq:
        if any(_strictly_precedes(comp_of, reach, v, w) for w in seen):
            return False
        seen.append(v)
    return True


def sweep_linear_extension(p: Program, vertices=None) -> list[SignVector]:
    """Deterministic linear extension of the sweep preorder, breaking ties by
    sign-string order. When a vertex subset is given, only the precedence it
    induces is used."""
    p.require_euclidean()
    comp_of, reach = sweep_preorder(p)
    pool = p.swept_cocircuits() if vertices is None else list(vertices)
    for v in pool:
        if v not in comp_of:
            raise SweepError(f"{v} is not a swept vertex")
    return linearize_preorder(comp_of, reach, pool)


def linear_extensions(p: Program, limit: int | None = None):
    """Generate linear extensions of the sweep preorder in lexicographic
    sign-string order, optionally stopping after a limit."""
    comp_of, reach = sweep_preorder(p)
    pool = sorted(p.swept_cocircuits(), key=str)
    produced = 0
    prefix: list[SignVector] = []
    remaining = set(pool)

    def candidates():
        out = []
        for v in pool:
            if v not in remaining:
                continue
            if any(
                w is not v and _strictly_precedes(comp_of, reach, w, v)
                for w in remaining
            ):
                continue
            out.append(v)
        return out

    def walk():
        nonlocal produced
        if limit is not None and produced >= limit:
            return
        if not remaining:
            produced += 1
            yield list(prefix)
            return
        for v in candidates():
            prefix.append(v)
            remaining.discard(v)
            yield from walk()
            remaining.add(v)
            prefix.pop()
            if limit is not None and produced >= limit:
                return

    yield from walk()


@dataclass(frozen=True)
class SweepOrder:
    """A constructed sweep: the vertex order, the adjoined element names
    (names[i-1] passes through order[i-1]), the final extended matroid, the
    lifts of the ordered vertices into it, and the zero windows of the
    staircase."""

    program: Program
    order: tuple[SignVector, ...]
    names: tuple[str, ...]
    localizations: tuple[Localization, ...]
    final: OrientedMatroid
    lifts: tuple[SignVector, ...]
    windows: tuple[tuple[int, int], ...]

    def column_position(self, i: int) -> int:
        """Final-matroid position of the i-th sweep element (1-based i)."""
        n = self.program.om.n
        s = len(self.names)
        return n + s - i

    def staircase(self) -> list[str]:
        """Rows of new-element signs, one row per ordered vertex, columns in
        sweep order."""
        s = len(self.names)
        chars = {1: "+", -1: "-", 0: "0"}
        return [
            "".join(chars[lift.sign(self.column_position(i))] for i in range(1, s + 1))
            for lift in self.lifts
        ]

    def as_dict(self) -> dict:
        return {
            "order": [str(v) for v in self.order],
            "names": list(self.names),
            "staircase": self.staircase(),
            "windows": [list(w) for w in self.windows],
        }


def _sweep_names(om: OrientedMatroid, count: int) -> list[str]:
    prefix = "h"
    while any(f"{prefix}{i}" in om.elements for i in range(1, count + 1)):
        prefix += "h"
    return [f"{prefix}{i}" for i in range(1, count + 1)]


def _staircase_window(row: list[int], j: int) -> tuple[int, int]:
    """Validate one staircase row (1-based vertex position j) and return its
    zero window."""
    s = len(row)
    i1 = next((i for i in range(1, s + 1) if row[i - 1] != 1), s + 1)
    i2 = next((i for i in range(s, 0, -1) if row[i - 1] != -1), 0)
    if i1 > i2:
        raise SweepError(f"staircase row {j} has an empty zero window")
    for i in range(1, s + 1):
        expected = 1 if i < i1 else (0 if i <= i2 else -1)
        if row[i - 1] != expected:
            raise SweepError(f"staircase row {j} is not monotone")
    if not (i1 <= j <= i2):
        raise SweepError(f"staircase row {j} has zero window ({i1}, {i2}) missing {j}")
    return (i1, i2)


def build_sweep(p: Program, order) -> SweepOrder:
    """Sweep the program along the given vertex order.

    The order must list every swept vertex (the lift of a g-positive
    cocircuit of the deletion of the objective) once and be a linear
    extension of the sweep preorder. New elements are adjoined from the last
    vertex back to the first, each by a parallel localization through the
    current lift of its vertex; every intermediate program must stay
    Euclidean. A zero window longer than one vertex means two vertices could
    not be separated and raises the degenerate error.
    """
    p.require_euclidean()
    if not p.om.is_general_position(p.f):
        raise SweepError("objective element is not in general position")
    seq = list(order)
    if sorted(seq, key=str) != sorted(p.swept_cocircuits(), key=str):
        raise SweepError("order is not a permutation of the swept vertices")
    comp_of, reach = sweep_preorder(p)
    for j in range(len(seq)):
        for i in range(j):
            if _strictly_precedes(comp_of, reach, seq[j], seq[i]):
                raise SweepError(
                    f"order is not a linear extension: {seq[j]} must precede {seq[i]}"
                )
    s = len(seq)
    names = _sweep_names(p.om, s)
    current = p.om
    lifts = list(seq)
    localizations: list[Localization | None] = [None] * s
    for i in range(s, 0, -1):
        prog = Program(current, p.g, p.f)
        try:
            loc = parallel_localization(prog, lifts[i - 1], names[i - 1])
        except NotEuclideanError:
            raise NotEuclideanError(
                f"intermediate program stopped being Euclidean before adjoining {names[i - 1]}"
            ) from None
        current = extend(current, loc)
        lifts = [lift.extend(loc.sigma(lift)) for lift in lifts]
        localizations[i - 1] = loc
    sweep = SweepOrder(
        program=p,
        order=tuple(seq),
        names=tuple(names),
        localizations=tuple(localizations),
        final=current,
        lifts=tuple(lifts),
        windows=(),
    )
    windows = []
    for j in range(1, s + 1):
        row = [sweep.lifts[j - 1].sign(sweep.column_position(i)) for i in range(1, s + 1)]
        windows.append(_staircase_window(row, j))
    for j, (i1, i2) in enumerate(windows, start=1):
        if i1 != i2:
            raise DegenerateSweepError(
                f"sweep is degenerate: vertices {i1} through {i2} were not separated"
            )
    return SweepOrder(
        program=p,
        order=sweep.order,
        names=sweep.names,
        localizations=sweep.localizations,
        final=sweep.final,
        lifts=sweep.lifts,
        windows=tuple(windows),
    )


@dataclass(frozen=True)
class SweepReport:
    ok: bool
    issues: tuple[str, ...]
    windows: tuple[tuple[int, int], ...]
    nondegenerate: bool

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "issues": list(self.issues),
            "windows": [list(w) for w in self.windows],
            "nondegenerate": self.nondegenerate,
        }


def verify_sweep(p: Program, sweep: SweepOrder, deep: bool = False) -> SweepReport:
    """Check a sweep certificate against its program.

    Verifies that the order enumerates the swept vertices, the final matroid
    extends the program's matroid by the named elements at unchanged rank,
    the lifts restrict back to the ordered vertices, every new element is
    parallel to the objective (equal signs on every cocircuit at infinity),
    and the staircase is monotone with singleton zero windows on the
    diagonal. With deep=True the final matroid is also run through the full
    cocircuit axiom validation.
    """
    issues: list[str] = []
    om = p.om
    n = om.n
    s = len(sweep.names)
    if sorted(sweep.order, key=str) != sorted(p.swept_cocircuits(), key=str):
        issues.append("order is not a permutation of the swept vertices")
    if len(sweep.order) != s or len(sweep.lifts) != s:
        issues.append("order, names and lifts have mismatched lengths")
    final = sweep.final
    structure_ok = True
    if final.n != n + s or final.elements[:n] != om.elements:
        issues.append("final matroid does not extend the program's ground set")
        structure_ok = False
    elif final.elements[n:] != tuple(reversed(sweep.names)):
        issues.append("final matroid elements do not match the sweep names")
        structure_ok = False
    if structure_ok and final.rank != om.rank:
        issues.append(f"rank changed from {om.rank} to {final.rank}")
        structure_ok = False
    lifts_ok = structure_ok
    if structure_ok:
        keep = list(range(n))
        for j, lift in enumerate(sweep.lifts, start=1):
            if lift.n != final.n or not final.is_cocircuit(lift):
                issues.append(f"lift {j} is not a cocircuit of the final matroid")
                lifts_ok = False
            elif j <= len(sweep.order) and lift.restrict(keep) != sweep.order[j - 1]:
                issues.append(f"lift {j} does not restrict to vertex {j}")
                lifts_ok = False
    if structure_ok:
        gpos = final.position(p.g)
        fpos = final.position(p.f)
        columns = [final.position(name) for name in sweep.names]
        for x in final.cocircuits:
            if x.sign(gpos) != 0:
                continue
            want = x.sign(fpos)
            for i, pos in enumerate(columns, start=1):
                if x.sign(pos) != want:
                    issues.append(
                        f"element {sweep.names[i - 1]} is not parallel to the objective"
                    )
                    break
            else:
                continue
            break
    windows: list[tuple[int, int]] = []
    nondegenerate = True
    if lifts_ok and len(sweep.order) == s:
        for j in range(1, s + 1):
            row = [
                sweep.lifts[j - 1].sign(sweep.column_position(i))
                for i in range(1, s + 1)
            ]
            try:
                windows.append(_staircase_window(row, j))
            except SweepError as exc:
                issues.append(str(exc))
                nondegenerate = False
        for i1, i2 in windows:
            if i1 != i2:
                issues.append(f"degenerate zero window ({i1}, {i2})")
                nondegenerate = False
    if deep and structure_ok:
        report = validate_cocircuits(final.cocircuits, rank=om.rank, ground_size=final.n)
        for issue in report.issues:
            issues.append(f"final matroid fails {issue.axiom}: {issue.witness}")
    return SweepReport(
        ok=not issues,
        issues=tuple(issues),
        windows=tuple(windows),
        nondegenerate=nondegenerate,
    )
