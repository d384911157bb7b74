"""Vertex shellings via recursive atom orderings.

Both constructions order cocircuits (the atoms of a face lattice) and are
certified by an independent verifier of the recursive-atom-ordering property:
for each atom, the atoms of its upper interval that dominate an earlier atom
must cover the whole overlap with earlier upper intervals, and the upper
interval must itself admit a recursive atom ordering starting with exactly
those atoms.

The tope scope shells the feasible region of a program; the whole scope shells
the face lattice after deleting the objective, driven by a basis: sweep orders
of the contractions along the basis prefix supply the blocks, descending
through negative objective values and ascending back through positive ones.
"""

from __future__ import annotations

from dataclasses import dataclass

from omprog.om import TOP, FaceLattice, OrientedMatroid
from omprog.programs import (
    InfeasibleError,
    NotEuclideanError,
    Program,
    ProgramError,
    UnboundedError,
    condensation,
    feasible_region,
    is_bounded,
    is_euclidean_om,
    is_feasible,
)
from omprog.signs import SignVector
from omprog.sweeps import (
    DegenerateSweepError,
    linearize_preorder,
    sweep_linear_extension,
)


def edge_compositions(om: OrientedMatroid, order, j: int) -> frozenset[SignVector]:
    """Compositions of the j-th order member with each earlier comodular
    conformal member (1-based j). These are the edges of the face lattice
    joining the j-th atom to earlier ones."""
    seq = list(order)
    if not 1 <= j <= len(seq):
        raise ValueError(f"position {j} out of range")
    xj = seq[j - 1]
    out = set()
    for i in range(j - 1):
        xi = seq[i]
        if xi.separation_mask(xj):
            continue
        if not om.comodular_mask(xi.zero_mask, xj.zero_mask):
            continue
        out.add(xi.compose(xj))
    return frozenset(out)


def compute_qj(p: Program, order, j: int) -> frozenset[SignVector]:
    """Q_j of a shelling order of the program's feasible atoms, computed in the
    program's own matroid."""
    return edge_compositions(p.om, order, j)


def verify_recursive_atom_ordering(lattice: FaceLattice, order) -> bool:
    """Decide whether the order is a recursive atom ordering of the lattice.

    The given order is checked literally at the top level; the recursion into
    upper intervals only decides existence of a completion, backtracking over
    candidate continuations with memoization on (interval bottom, forced
    prefix set).
    """
    seq = list(order)
    atoms = lattice.atoms()
    if sorted(seq, key=str) != sorted(atoms, key=str):
        raise ValueError("order is not a permutation of the atoms")
    if lattice.length() <= 2:
        return True
    memo: dict = {}
    for j, xj in enumerate(seq):
        prior = seq[:j]
        qj = _dominating_interval_atoms(lattice, xj, prior)
        if not _overlap_identity(lattice, xj, prior, qj):
            return False
        if not _interval_admits_rao(lattice, xj, qj, memo):
            return False
    return True


def _dominating_interval_atoms(lattice, x, prior):
    """Atoms of [x, top] lying above at least one member of prior."""
    out = []
    for y in lattice.covers(x):
        if y is TOP:
            if prior:
                out.append(y)
            continue
        if any(p.conforms_to(y) for p in prior):
            out.append(y)
    return frozenset(out)


def _overlap_identity(lattice, x, prior, qj) -> bool:
    """Every face above x and above some earlier atom must dominate a qj
    member."""
    if not prior:
        return True
    pool = list(lattice.above(x)) + [TOP]
    for z in pool:
        if not any(lattice.leq(p, z) for p in prior):
            continue
        if not any(lattice.leq(y, z) for y in qj):
            return False
    return True


def _interval_admits_rao(lattice, x, required: frozenset, memo) -> bool:
    """Decide whether [x, top] admits a recursive atom ordering whose first
    atoms are exactly the required set."""
    if lattice.height_to_top(x) <= 2:
        return True
    key = (x, required)
    if key in memo:
        return memo[key]
    atoms = [y for y in lattice.covers(x) if y is not TOP]
    pool = frozenset(atoms)
    if not required <= pool:
        memo[key] = False
        return False
    states: dict[frozenset, bool] = {}

    def admissible(a, placed) -> bool:
        qa = _dominating_interval_atoms(lattice, a, placed)
        if not _overlap_identity(lattice, a, list(placed), qa):
            return False
        return _interval_admits_rao(lattice, a, qa, memo)

    def can_complete(placed: frozenset) -> bool:
        if placed == pool:
            return True
        if placed in states:
            return states[placed]
        forced = required - placed
        candidates = sorted(forced if forced else pool - placed, key=str)
        result = False
        for a in candidates:
            if admissible(a, placed) and can_complete(placed | {a}):
                result = True
                break
        states[placed] = result
        return result

    result = can_complete(frozenset())
    memo[key] = result
    return result


@dataclass(frozen=True)
class ShellingOrder:
    """A certified atom order: the lattice it shells, the ordered atoms, the
    edge sets joining each atom to its predecessors, and the verifier's
    verdict."""

    scope: str
    atoms: tuple[SignVector, ...]
    qsets: tuple[frozenset[SignVector], ...]
    lattice: FaceLattice
    verified: bool

    def as_dict(self) -> dict:
        return {
            "scope": self.scope,
            "order": [str(v) for v in self.atoms],
            "qsets": [sorted(str(v) for v in q) for q in self.qsets],
            "verified": self.verified,
        }


def shelling_order_tope(p: Program) -> ShellingOrder:
    """Shell the feasible region of a feasible, bounded, Euclidean program
    whose objective and infinity elements are in general position.

    The atom order is the deterministic sweep order of the feasible
    cocircuits, including any on the objective's zero set, linearized from
    the reachability preorder of the full cocircuit graph; the certificate is
    the recursive-atom-ordering verifier run on the face lattice of the
    feasible region. Two feasible vertices joined by an undirected path have
    tied objective values under every sweep, so such programs are rejected as
    degenerate rather than shelled with an arbitrary tie break.
    """
    if not is_feasible(p):
        raise InfeasibleError("infeasible")
    if not is_bounded(p):
        raise UnboundedError("unbounded")
    p.require_euclidean()
    om = p.om
    if p.g in om.coloops():
        raise ProgramError(f"infinity element {p.g!r} is a coloop")
    for name, e in (("objective", p.f), ("infinity", p.g)):
        if not om.is_general_position(e):
            raise ProgramError(f"{name} element {e!r} is not in general position")
    feasible = set(p.feasible_cocircuits())
    graph = p.graph()
    comp_idx, reach = condensation(graph)
    comp_of = {graph.vertices[i]: comp_idx[i] for i in range(len(graph.vertices))}
    seen: dict[int, SignVector] = {}
    for v in graph.vertices:
        if v not in feasible:
            continue
        cid = comp_of[v]
        if cid in seen:
            raise DegenerateSweepError(
                f"feasible vertices {seen[cid]} and {v} are joined by an "
                "undirected path; their objective values are tied"
            )
        seen[cid] = v
    order = linearize_preorder(comp_of, reach, feasible)
    qsets = tuple(edge_compositions(om, order, j) for j in range(1, len(order) + 1))
    lattice = FaceLattice(feasible_region(p), om.n)
    verified = verify_recursive_atom_ordering(lattice, order)
    return ShellingOrder("tope", tuple(order), qsets, lattice, verified)


def _contraction_sweep(om: OrientedMatroid, contract: list[str], g: str, f: str):
    """Sweep data for one basis index: the contraction, the lift of its
    cocircuits back to the full matroid, and the sweep orders for both signs
    of the pivot element (the negative side is swept in the reoriented
    contraction)."""
    sub = om.minor(contract=contract)
    cmask = om.mask_of(contract)
    lift: dict[SignVector, SignVector] = {}
    keep = [i for i in range(om.n) if not (cmask >> i) & 1]
    for v in om.cocircuits:
        if v.support_mask & cmask:
            continue
        lift[v.restrict(keep)] = v
    prog_pos = Program(sub, g, f)
    prog_pos.require_euclidean()
    order_pos = sweep_linear_extension(prog_pos)
    sub_neg = sub.reorient([g])
    prog_neg = Program(sub_neg, g, f)
    prog_neg.require_euclidean()
    gbit = 1 << sub_neg.position(g)
    order_neg = [w.reorient(gbit) for w in sweep_linear_extension(prog_neg)]
    fpos_sub = sub.position(f)
    return lift, order_pos, order_neg, fpos_sub


def shelling_order_whole(om: OrientedMatroid, f: str, basis) -> ShellingOrder:
    """Shell the whole face lattice of the deletion of the objective from a
    Euclidean matroid, guided by an ordered basis.

    The order starts at the vertex where the basis prefix vanishes on the
    negative objective side, descends through the basis indices emitting the
    sweep blocks with negative objective value, ascends back through the
    indices in reverse emitting the blocks with positive value, and ends at
    the antipode of the start. Within every index the block where the pivot
    element is positive comes before the reoriented negative block. The
    construction is certified by the recursive-atom-ordering verifier on the
    deletion's face lattice.
    """
    ok, witness = is_euclidean_om(om)
    if not ok:
        raise NotEuclideanError(f"matroid is not Euclidean: {witness}")
    fpos = om.position(f)
    if f in om.coloops():
        raise ProgramError(f"objective element {f!r} is a coloop")
    if not om.is_general_position(f):
        raise ProgramError(f"objective element {f!r} is not in general position")
    names = list(basis)
    if f in names:
        raise ValueError("basis must not contain the objective element")
    if len(set(names)) != len(names):
        raise ValueError("basis elements must be distinct")
    r = om.rank
    if len(names) != r or om.rank_of(names) != r:
        raise ValueError("not an ordered basis of the matroid")
    prefix_mask = om.mask_of(names[: r - 1])
    starts = [
        v
        for v in om.cocircuits
        if not (v.support_mask & prefix_mask) and v.sign(fpos) < 0
    ]
    if len(starts) != 1:
        raise RuntimeError("basis prefix does not determine a unique start vertex")
    start = starts[0]
    steps = []
    for i in range(r - 1, 0, -1):
        steps.append((i, _contraction_sweep(om, names[: i - 1], names[i - 1], f)))
    emitted = [start]
    for i, (lift, order_pos, order_neg, fpos_sub) in steps:
        emitted.extend(lift[w] for w in order_pos if w.sign(fpos_sub) < 0)
        emitted.extend(lift[w] for w in order_neg if w.sign(fpos_sub) < 0)
    for i, (lift, order_pos, order_neg, fpos_sub) in reversed(steps):
        emitted.extend(lift[w] for w in order_pos if w.sign(fpos_sub) > 0)
        emitted.extend(lift[w] for w in order_neg if w.sign(fpos_sub) > 0)
    emitted.append(-start)
    deletion = om.minor(delete=[f])
    keep = [i for i in range(om.n) if i != fpos]
    atoms = tuple(v.restrict(keep) for v in emitted)
    qsets = tuple(
        edge_compositions(deletion, atoms, j) for j in range(1, len(atoms) + 1)
    )
    lattice = deletion.covectors()
    verified = verify_recursive_atom_ordering(lattice, atoms)
    return ShellingOrder("whole", atoms, qsets, lattice, verified)
