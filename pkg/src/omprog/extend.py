"""Single-element extensions described by localizations.

A localization assigns a sign to every cocircuit, odd under negation; it
prescribes the sign the extending element will carry on each extended
cocircuit. The extension itself consists of the extended cocircuits together
with compositions of comodular conformal pairs on which the localization takes
opposite nonzero values (these compositions vanish on the new element).

Two constructions are provided: lexicographic localizations from a signed
independent base, and parallel localizations that push a copy of the objective
element through a chosen vertex of a Euclidean program.
"""

from __future__ import annotations

from omprog.om import OrientedMatroid, ValidationIssue, ValidationReport, validate_cocircuits
from omprog.programs import Program, condensation
from omprog.signs import SignVector

_SIGN_ALIASES = {1: 1, -1: -1, 0: 0, "+": 1, "-": -1, "0": 0}


def _normalize_sign(value) -> int:
    try:
        return _SIGN_ALIASES[value]
    except (KeyError, TypeError):
        raise ValueError(f"not a sign: {value!r}") from None


def _base_positions(om: OrientedMatroid, base) -> list[int]:
    names = list(base)
    if len(set(names)) != len(names):
        raise ValueError("base elements must be distinct")
    return [om.position(e) for e in names]


def index_of(om: OrientedMatroid, y: SignVector, base) -> int:
    """One-based position of the first base element in the support of y, or
    len(base) + 1 when y vanishes on the whole base."""
    positions = _base_positions(om, base)
    for i, pos in enumerate(positions, start=1):
        if y.sign(pos) != 0:
            return i
    return len(positions) + 1


class Localization:
    """A sign assignment on the cocircuits of a matroid, odd under negation.

    Values are stored on canonical representatives only; sigma() derives the
    rest by oddness.
    """

    def __init__(self, base: OrientedMatroid, name: str, values: dict[SignVector, int]):
        if name in base.elements:
            raise ValueError(f"element name {name!r} already used")
        reps = set(base.representatives)
        normalized = {}
        for v, s in values.items():
            if v not in reps:
                raise ValueError(f"{v} is not a canonical cocircuit of the base")
            normalized[v] = _normalize_sign(s)
        missing = reps - set(normalized)
        if missing:
            raise ValueError(f"localization misses {len(missing)} cocircuits")
        self.base = base
        self.name = name
        self.values = normalized

    def sigma(self, v: SignVector) -> int:
        c = v.canonical()
        try:
            s = self.values[c]
        except KeyError:
            raise ValueError(f"{v} is not a cocircuit of the base") from None
        return s if v == c else -s

    def is_zero(self) -> bool:
        return not any(self.values.values())

    def items(self):
        return sorted(self.values.items(), key=lambda kv: str(kv[0]))

    def as_dict(self) -> dict[str, int]:
        return {str(v): s for v, s in self.items()}

    def __repr__(self) -> str:
        return f"Localization(name={self.name!r}, {len(self.values)} cocircuit pairs)"


def lex_localization(om: OrientedMatroid, base, signs, name: str) -> Localization:
    """Lexicographic localization for the template [e_1^s_1, ..., e_k^s_k]:
    each cocircuit gets the sign it carries at the first base element in its
    support, multiplied by that element's template sign; cocircuits vanishing
    on the whole base get zero."""
    positions = _base_positions(om, base)
    alphas = [_normalize_sign(s) for s in signs]
    if len(alphas) != len(positions):
        raise ValueError("base and signs must have equal length")
    if any(a == 0 for a in alphas):
        raise ValueError("template signs must be nonzero")
    if om.rank_of(base) != len(positions):
        raise ValueError("base must be independent")
    values = {}
    for v in om.representatives:
        s = 0
        for pos, alpha in zip(positions, alphas):
            t = v.sign(pos)
            if t != 0:
                s = alpha * t
                break
        values[v] = s
    return Localization(om, name, values)


def extend(om: OrientedMatroid, loc: Localization) -> OrientedMatroid:
    """Single-element extension of om along a localization.

    Cocircuits of the result are the extended old cocircuits plus, for every
    comodular conformal pair on which the localization takes opposite nonzero
    values, the composition extended by zero. Identically zero localizations
    are rejected; structural failures of the result raise with the offending
    witness in the message.
    """
    if loc.base is not om and loc.base != om:
        raise ValueError("localization belongs to a different matroid")
    if loc.is_zero():
        raise ValueError("localization is identically zero")
    new_vectors = [v.extend(loc.sigma(v)) for v in om.cocircuits]
    composed = set()
    cocircuits = om.cocircuits
    sigmas = [loc.sigma(v) for v in cocircuits]
    for i in range(len(cocircuits)):
        if sigmas[i] == 0:
            continue
        x = cocircuits[i]
        for j in range(i + 1, len(cocircuits)):
            if sigmas[j] != -sigmas[i]:
                continue
            y = cocircuits[j]
            if x.separation_mask(y):
                continue
            if not om.comodular_mask(x.zero_mask, y.zero_mask):
                continue
            composed.add(x.compose(y).extend(0))
    result = OrientedMatroid(
        om.elements + (loc.name,), new_vectors + sorted(composed, key=str)
    )
    if result.rank != om.rank:
        raise ValueError(
            f"localization is invalid: rank changed from {om.rank} to {result.rank}"
        )
    return result


def lex_extend(om: OrientedMatroid, base, signs, name: str) -> OrientedMatroid:
    return extend(om, lex_localization(om, base, signs, name))


def parallel_localization(p: Program, y0: SignVector, name: str) -> Localization:
    """Localization of a new element parallel to the objective passing through
    the vertex y0 of a Euclidean program.

    Vertices in the same undirected class as y0 get zero, vertices strictly
    reachable from it get plus, all other vertices minus. Cocircuits at
    infinity copy their objective sign; the rest follows by oddness.
    """
    om = p.om
    if not om.is_cocircuit(y0):
        raise ValueError(f"{y0} is not a cocircuit")
    if y0.sign(p.gpos) <= 0:
        raise ValueError("through-vertex must be strictly positive at the infinity element")
    p.require_euclidean()
    graph = p.graph()
    comp_of, reach = condensation(graph)
    c0 = comp_of[graph.index(y0)]
    reachable = reach[c0]

    def rule(y: SignVector) -> int:
        yg = y.sign(p.gpos)
        if yg > 0:
            c = comp_of[graph.index(y)]
            if c == c0:
                return 0
            return 1 if c in reachable else -1
        if yg == 0:
            return y.sign(p.fpos)
        return -rule(-y)

    values = {v: rule(v) for v in om.representatives}
    return Localization(om, name, values)


def corresponding_cocircuit(
    om_ext: OrientedMatroid, p: str, ynew: SignVector, base
) -> SignVector:
    """Given an extension by element p and a cocircuit ynew that vanishes at p
    but is new (it meets the lexicographic base), recover the generating pair
    whose composition produced ynew and return its member with the higher base
    index."""
    ppos = om_ext.position(p)
    if not om_ext.is_cocircuit(ynew):
        raise ValueError(f"{ynew} is not a cocircuit")
    if ynew.sign(ppos) != 0:
        raise ValueError("cocircuit does not vanish at the new element")
    positions = _base_positions(om_ext, base)
    k = len(positions)
    idx = index_of(om_ext, ynew, base)
    if idx == k + 1:
        raise ValueError("cocircuit vanishes on the whole base, so it is an old cocircuit")
    pbit = 1 << ppos
    off = om_ext._full_mask & ~pbit
    plus = [v for v in om_ext.cocircuits if v.sign(ppos) > 0]
    minus = [v for v in om_ext.cocircuits if v.sign(ppos) < 0]
    pairs = []
    for x in plus:
        for z in minus:
            if x.separation_mask(z) != pbit:
                continue
            w = x.compose(z)
            if (w.pos & off) == (ynew.pos & off) and (w.neg & off) == (ynew.neg & off):
                pairs.append((x, z))
    if not pairs:
        raise RuntimeError(f"no generating pair found for {ynew}")
    if len(pairs) > 1:
        raise RuntimeError(f"generating pair for {ynew} is not unique")
    x, z = pairs[0]
    ix = index_of(om_ext, x, base)
    iz = index_of(om_ext, z, base)
    if ix == iz:
        raise RuntimeError(f"generating pair members share base index {ix}")
    return x if ix > iz else z


def validate_localization(om: OrientedMatroid, loc: Localization) -> ValidationReport:
    """Full check that a localization defines a valid extension: build it and
    run the complete cocircuit axiom validation on the result."""
    try:
        result = extend(om, loc)
    except ValueError as exc:
        return ValidationReport(
            ok=False,
            rank_declared=om.rank,
            rank_computed=None,
            issues=[ValidationIssue("construction", str(exc))],
        )
    return validate_cocircuits(result.cocircuits, rank=om.rank, ground_size=om.n + 1)
