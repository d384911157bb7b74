"""Oriented matroids presented by antipodally closed cocircuit lists.

The underlying matroid is recovered through zero sets: flats are intersections
of cocircuit zero sets, rank comes from greedy flat chains, and comodularity,
elimination, minors, reorientation and the covector face lattice are all
derived from the cocircuit list alone.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field

from omprog.signs import SignVector, iter_bits


@dataclass(frozen=True)
class Flat:
    """A closed set of elements together with its matroid rank."""

    elements: frozenset[str]
    rank: int


@dataclass(frozen=True)
class ValidationIssue:
    axiom: str
    witness: str


@dataclass
class ValidationReport:
    ok: bool
    rank_declared: int | None
    rank_computed: int | None
    issues: list[ValidationIssue] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "rank_declared": self.rank_declared,
            "rank_computed": self.rank_computed,
            "issues": [{"axiom": i.axiom, "witness": i.witness} for i in self.issues],
        }


def _close_under_negation(vectors: Iterable[SignVector]) -> list[SignVector]:
    seen = set()
    for v in vectors:
        seen.add(v)
        seen.add(-v)
    return sorted(seen, key=str)


def _chain_rank(zero_masks: list[int], full_mask: int, subset: int) -> int:
    """Greedy flat-chain rank of a subset, flats being intersections of the
    given zero sets (the full ground set when no zero set contains the seed)."""

    def close(m: int) -> int:
        out = full_mask
        hit = False
        for z in zero_masks:
            if z & m == m:
                out &= z
                hit = True
        return out if hit else full_mask

    cl = close(0)
    rank = 0
    todo = subset & ~cl
    while todo:
        e = todo & -todo
        cl = close(cl | e)
        rank += 1
        todo = subset & ~cl
    return rank


def validate_cocircuits(
    candidate: Iterable[SignVector],
    rank: int | None = None,
    ground_size: int | None = None,
) -> ValidationReport:
    """Check the signed cocircuit axioms on a candidate vector set.

    Verified in order: consistent ground size, no all-zero member, closure
    under negation, support incomparability, and signed weak elimination (for
    every pair X != +-Y and every separating position e there must be a member
    Z vanishing at e whose signs all come from X o Y or Y o X or are zero).
    When a declared rank is given it is compared against the greedy flat-chain
    rank. Each violated axiom is reported with one witness.
    """
    vectors = list(candidate)
    issues: list[ValidationIssue] = []

    n = ground_size if ground_size is not None else (vectors[0].n if vectors else 0)
    for v in vectors:
        if v.n != n:
            issues.append(ValidationIssue("ground", f"{v} has length {v.n}, expected {n}"))
            return ValidationReport(False, rank, None, issues)

    for v in vectors:
        if v.is_zero():
            issues.append(ValidationIssue("nonzero", "all-zero vector present"))
            break

    vecset = set(vectors)
    vectors = sorted(vecset, key=str)
    masks = {(v.pos, v.neg) for v in vectors}
    for v in vectors:
        if (v.neg, v.pos) not in masks:
            issues.append(ValidationIssue("symmetry", f"negation of {v} missing"))
            break

    k = len(vectors)
    supports = [v.support_mask for v in vectors]
    # cheap detection over distinct supports: a support class must be one
    # +-pair, and no support may be a proper submask of another present one
    by_support: dict[int, list[SignVector]] = {}
    for v in vectors:
        by_support.setdefault(v.support_mask, []).append(v)
    nested = 0 in by_support and len(by_support) > 1
    if not nested:
        for members in by_support.values():
            if len(members) > 2 or (len(members) == 2 and members[0] != -members[1]):
                nested = True
                break
    if not nested:
        for s in by_support:
            t = (s - 1) & s
            while t:
                if t in by_support:
                    nested = True
                    break
                t = (t - 1) & s
            if nested:
                break
    if nested:
        found = None
        for i in range(k):
            si = supports[i]
            for j in range(i + 1, k):
                sj = supports[j]
                extra_i = si & ~sj
                extra_j = sj & ~si
                if extra_i and extra_j:
                    continue
                vi, vj = vectors[i], vectors[j]
                if si == sj and vi == -vj:
                    continue
                found = (vj, vi) if extra_i else (vi, vj)
                break
            if found:
                break
        issues.append(
            ValidationIssue("incomparability", f"supp({found[0]}) nested in supp({found[1]})")
        )

    full_mask = (1 << n) - 1
    zero_at: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for v in vectors:
        zm = v.zero_mask
        while zm:
            low = zm & -zm
            zero_at[low.bit_length() - 1].append((v.pos, v.neg))
            zm ^= low

    pos_of = [v.pos for v in vectors]
    neg_of = [v.neg for v in vectors]
    elim_witness = None
    for i in range(k):
        xp, xn = pos_of[i], neg_of[i]
        for j in range(i + 1, k):
            yp, yn = pos_of[j], neg_of[j]
            if xp == yn and xn == yp:
                continue
            sep = (xp & yn) | (xn & yp)
            if not sep:
                continue
            outside_pos = ~(xp | yp)
            outside_neg = ~(xn | yn)
            while sep:
                low = sep & -sep
                sep ^= low
                e = low.bit_length() - 1
                for zp, zn in zero_at[e]:
                    if not (zp & outside_pos) and not (zn & outside_neg):
                        break
                else:
                    elim_witness = (
                        f"no eliminator for {vectors[i]}, {vectors[j]} at position {e}"
                    )
                    break
            if elim_witness:
                break
        if elim_witness:
            break
    if elim_witness:
        issues.append(ValidationIssue("elimination", elim_witness))

    rank_computed = None
    if not any(i.axiom == "ground" for i in issues):
        rank_computed = _chain_rank([v.zero_mask for v in vectors], full_mask, full_mask)
        if rank is not None and rank != rank_computed:
            issues.append(
                ValidationIssue("rank", f"declared {rank}, flat-chain rank {rank_computed}")
            )

    return ValidationReport(not issues, rank, rank_computed, issues)


class OrientedMatroid:
    """An oriented matroid given by named elements and its cocircuit list.

    The constructor closes the list under negation, deduplicates, and runs the
    cheap structural checks (no zero vector, support incomparability). The
    elimination axiom is not re-verified here; use validate() or the
    module-level validate_cocircuits for the full report.
    """

    def __init__(
        self,
        elements: Iterable[str],
        cocircuits: Iterable[SignVector],
        rank: int | None = None,
    ):
        self.elements: tuple[str, ...] = tuple(str(e) for e in elements)
        if len(set(self.elements)) != len(self.elements):
            raise ValueError("element names must be distinct")
        self.n = len(self.elements)
        self._index = {e: i for i, e in enumerate(self.elements)}
        self.cocircuits: tuple[SignVector, ...] = tuple(_close_under_negation(cocircuits))
        for v in self.cocircuits:
            if v.n != self.n:
                raise ValueError(f"cocircuit {v} does not match ground size {self.n}")
            if v.is_zero():
                raise ValueError("all-zero cocircuit")
        self._check_incomparability()
        self._full_mask = (1 << self.n) - 1 if self.n else 0
        self._zero_masks = [v.zero_mask for v in self.cocircuits]
        self._closure_cache: dict[int, int] = {}
        self._rank_cache: dict[int, int] = {}
        self._lattice = None
        self._zero_at: list[list[SignVector]] = [[] for _ in range(self.n)]
        for v in self.cocircuits:
            for e in iter_bits(v.zero_mask):
                self._zero_at[e].append(v)
        self._cocircuit_set = frozenset(self.cocircuits)
        self.rank = self._rank_mask(self._full_mask)
        if rank is not None and rank != self.rank:
            raise ValueError(f"declared rank {rank} but flat-chain rank is {self.rank}")

    def _check_incomparability(self) -> None:
        vecs = self.cocircuits
        sup = [v.support_mask for v in vecs]
        for i in range(len(vecs)):
            for j in range(len(vecs)):
                if i == j or sup[i] & ~sup[j]:
                    continue
                if sup[i] == sup[j] and (vecs[i] == vecs[j] or vecs[i] == -vecs[j]):
                    continue
                raise ValueError(
                    f"support of {vecs[i]} nested in support of {vecs[j]}"
                )

    # -- element bookkeeping ------------------------------------------------

    def position(self, e: str) -> int:
        try:
            return self._index[e]
        except KeyError:
            raise ValueError(f"unknown element {e!r}") from None

    def mask_of(self, elems: Iterable[str]) -> int:
        m = 0
        for e in elems:
            m |= 1 << self.position(e)
        return m

    def names_of(self, mask: int) -> frozenset[str]:
        return frozenset(self.elements[i] for i in iter_bits(mask))

    @property
    def representatives(self) -> list[SignVector]:
        """Canonical antipodal representatives, sorted by sign string."""
        return sorted({v.canonical() for v in self.cocircuits}, key=str)

    def is_cocircuit(self, x: SignVector) -> bool:
        return x in self._cocircuit_set

    def loops(self) -> frozenset[str]:
        m = self._full_mask
        for v in self.cocircuits:
            m &= v.zero_mask
        if not self.cocircuits:
            m = self._full_mask
        return self.names_of(m)

    def coloops(self) -> frozenset[str]:
        out = set()
        for v in self.cocircuits:
            s = v.support_mask
            if s and not (s & (s - 1)):
                out.add(self.elements[s.bit_length() - 1])
        return frozenset(out)

    # -- underlying matroid -------------------------------------------------

    def _closure_mask(self, m: int) -> int:
        cached = self._closure_cache.get(m)
        if cached is not None:
            return cached
        out = self._full_mask
        hit = False
        for z in self._zero_masks:
            if z & m == m:
                out &= z
                hit = True
        if not hit:
            out = self._full_mask
        self._closure_cache[m] = out
        return out

    def _rank_mask(self, m: int) -> int:
        cached = self._rank_cache.get(m)
        if cached is not None:
            return cached
        cl = self._closure_mask(0)
        rank = 0
        todo = m & ~cl
        while todo:
            e = todo & -todo
            cl = self._closure_mask(cl | e)
            rank += 1
            todo = m & ~cl
        self._rank_cache[m] = rank
        return rank

    def closure(self, elems: Iterable[str]) -> Flat:
        """Smallest flat containing the given elements.

        Flats are intersections of cocircuit zero sets; when no zero set
        contains the input the closure is the whole ground set.
        """
        cl = self._closure_mask(self.mask_of(elems))
        return Flat(self.names_of(cl), self._rank_mask(cl))

    def rank_of(self, elems: Iterable[str]) -> int:
        return self._rank_mask(self.mask_of(elems))

    # -- cocircuit-level structure -------------------------------------------

    def _require_cocircuit(self, x: SignVector) -> None:
        if x not in self._cocircuit_set:
            raise ValueError(f"{x} is not a cocircuit of this oriented matroid")

    def is_comodular(self, x: SignVector, y: SignVector) -> bool:
        """True when x and y span an edge: their zero sets meet in a flat of
        rank r - 2. Tested by rank, since two hyperplanes can meet in a flat
        of any smaller rank."""
        self._require_cocircuit(x)
        self._require_cocircuit(y)
        if x == y or x == -y:
            return False
        return self._rank_mask(x.zero_mask & y.zero_mask) == self.rank - 2

    def comodular_mask(self, zx: int, zy: int) -> bool:
        return self._rank_mask(zx & zy) == self.rank - 2

    def eliminate(self, x: SignVector, y: SignVector, e: str) -> SignVector:
        """The unique cocircuit z vanishing at e with support inside
        supp(x o y) and z_h = (x o y)_h away from the separator of x and y.

        Requires x, y comodular and e in their separator; uniqueness holds for
        comodular pairs, so zero or several candidates indicate an invalid
        cocircuit set and raise RuntimeError.
        """
        pos = self.position(e)
        if not self.is_comodular(x, y):
            raise ValueError("eliminate requires a comodular pair")
        sep = x.separation_mask(y)
        if not (sep >> pos) & 1:
            raise ValueError(f"element {e!r} does not separate the pair")
        comp = x.compose(y)
        off = self._full_mask & ~sep
        support_bound = comp.support_mask & ~(1 << pos)
        want_pos = comp.pos & off
        want_neg = comp.neg & off
        found = None
        for z in self._zero_at[pos]:
            if z.support_mask & ~support_bound:
                continue
            if (z.pos & off) != want_pos or (z.neg & off) != want_neg:
                continue
            if found is not None:
                raise RuntimeError("elimination produced two candidates; invalid cocircuit set")
            found = z
        if found is None:
            raise RuntimeError("elimination produced no candidate; invalid cocircuit set")
        return found

    # -- covector lattice -----------------------------------------------------

    def covectors(self) -> "FaceLattice":
        """All compositions of cocircuits plus the zero vector, as a lattice
        with an artificial top. Computed once by fixed-point iteration."""
        if self._lattice is None:
            zero = SignVector.zero(self.n)
            faces = {zero}
            frontier = [zero]
            cocircuits = self.cocircuits
            while frontier:
                new = []
                for v in frontier:
                    for c in cocircuits:
                        w = v.compose(c)
                        if w not in faces:
                            faces.add(w)
                            new.append(w)
                frontier = new
            self._lattice = FaceLattice(faces, self.n)
        return self._lattice

    # -- minors, reorientation, general position ------------------------------

    def minor(self, delete: Iterable[str] = (), contract: Iterable[str] = ()) -> OrientedMatroid:
        """Contract first, then delete.

        Contraction keeps the cocircuits vanishing on the contracted set;
        deletion restricts and keeps the support-minimal restrictions.
        """
        dmask = self.mask_of(delete)
        cmask = self.mask_of(contract)
        if dmask & cmask:
            raise ValueError("delete and contract sets overlap")
        keep_after_contract = [i for i in range(self.n) if not (cmask >> i) & 1]
        contracted = [
            v.restrict(keep_after_contract)
            for v in self.cocircuits
            if v.support_mask & cmask == 0
        ]
        names = [self.elements[i] for i in keep_after_contract]
        keep_final = [j for j, e in enumerate(names) if not (dmask >> self.position(e)) & 1]
        restricted = [v.restrict(keep_final) for v in contracted]
        restricted = [v for v in restricted if not v.is_zero()]
        supports = {}
        for v in restricted:
            supports.setdefault(v.support_mask, set()).add(v)
        minimal: list[SignVector] = []
        masks = list(supports)
        for m in masks:
            if any(other != m and other & ~m == 0 for other in masks):
                continue
            minimal.extend(supports[m])
        final_names = [names[j] for j in keep_final]
        return OrientedMatroid(final_names, minimal)

    def reorient(self, flip: Iterable[str]) -> OrientedMatroid:
        m = self.mask_of(flip)
        return OrientedMatroid(self.elements, [v.reorient(m) for v in self.cocircuits])

    def is_general_position(self, e: str) -> bool:
        """True when e is not a loop and no cocircuit hyperplane through e is
        spanned without e (e lies in no closure of a non-spanning subset of
        the other elements)."""
        pos = self.position(e)
        bit = 1 << pos
        if e in self.loops():
            return False
        for v in self._zero_at[pos]:
            if (self._closure_mask(v.zero_mask & ~bit) >> pos) & 1:
                return False
        return True

    def validate(self) -> ValidationReport:
        return validate_cocircuits(self.cocircuits, self.rank, self.n)

    # -- misc -----------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, OrientedMatroid)
            and self.elements == other.elements
            and self._cocircuit_set == other._cocircuit_set
        )

    def __repr__(self) -> str:
        return (
            f"OrientedMatroid(rank={self.rank}, elements={list(self.elements)}, "
            f"{len(self.representatives)} cocircuit pairs)"
        )


class _Top:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "TOP"


TOP = _Top()


class FaceLattice:
    """A set of covectors ordered by conformality, with an artificial top.

    The bottom is the zero vector when present; otherwise (as for the face
    lattice of a feasible region) an artificial bottom below all faces is
    implied. Atoms are the minimal faces above the bottom.
    """

    def __init__(self, faces: Iterable[SignVector], n: int):
        self.n = n
        self.faces: tuple[SignVector, ...] = tuple(sorted(set(faces), key=str))
        zero = SignVector.zero(n)
        self.bottom = zero if zero in set(self.faces) else None
        self._covers_cache: dict[object, tuple] = {}
        self._height_cache: dict[object, int] = {}

    def __len__(self) -> int:
        return len(self.faces) + 1 + (0 if self.bottom is not None else 1)

    def leq(self, a, b) -> bool:
        if a is b or a == b:
            return True
        if b is TOP:
            return True
        if a is TOP:
            return False
        return a.conforms_to(b)

    def atoms(self) -> tuple[SignVector, ...]:
        pool = [f for f in self.faces if f is not self.bottom and f != self.bottom]
        return tuple(self._minimal(pool))

    @staticmethod
    def _minimal(pool: list[SignVector]) -> list[SignVector]:
        out = []
        for y in pool:
            if not any(z != y and z.conforms_to(y) for z in pool):
                out.append(y)
        return sorted(out, key=str)

    def above(self, x) -> list:
        """Faces strictly above x, not including the top."""
        if x is TOP:
            return []
        return [f for f in self.faces if f != x and x.conforms_to(f)]

    def interval_atoms(self, x, t=TOP) -> tuple:
        """The faces covering x inside the interval from x to t."""
        if not self.leq(x, t):
            raise ValueError("interval is empty: lower bound not below upper bound")
        if x is TOP or x == t:
            return ()
        if x == self.bottom:
            pool = [f for f in self.faces if f != x and self.leq(f, t)]
        else:
            pool = [f for f in self.above(x) if self.leq(f, t)]
        if not pool:
            return (TOP,) if t is TOP else ()
        return tuple(self._minimal(pool))

    def covers(self, x) -> tuple:
        cached = self._covers_cache.get(x)
        if cached is None:
            cached = self.interval_atoms(x, TOP)
            self._covers_cache[x] = cached
        return cached

    def height_to_top(self, x) -> int:
        """Length of the longest chain from x up to the artificial top."""
        if x is TOP:
            return 0
        cached = self._height_cache.get(x)
        if cached is None:
            cached = 1 + max(self.height_to_top(y) for y in self.covers(x))
            self._height_cache[x] = cached
        return cached

    def length(self) -> int:
        """Longest chain from the bottom to the artificial top."""
        if self.bottom is not None:
            return self.height_to_top(self.bottom)
        if not self.faces:
            return 1
        return 1 + max(self.height_to_top(a) for a in self.atoms())

    def topes(self) -> tuple[SignVector, ...]:
        out = [
            f
            for f in self.faces
            if not any(g != f and f.conforms_to(g) for g in self.faces)
        ]
        return tuple(sorted(out, key=str))
