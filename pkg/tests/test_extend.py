"""Single-element extensions: lexicographic localizations, the extension
construction, parallel localizations, generating-pair recovery.

Over the triangle, the lexicographic extension on base [1, 2] with positive
template places the new element in general position and yields the uniform
rank-2 matroid on four elements, whose cocircuits are small enough to list.
"""

import pytest

from omprog.extend import (
    Localization,
    corresponding_cocircuit,
    extend,
    index_of,
    lex_extend,
    lex_localization,
    parallel_localization,
    validate_localization,
)
from omprog.programs import Program, edge_direction
from omprog.signs import SignVector

from conftest import strs, sv

A, B, C = sv("0++"), sv("+0+"), sv("+-0")


# -- index and localizations -----------------------------------------------------


def test_index_of(triangle):
    assert index_of(triangle, A, ["1", "2"]) == 2
    assert index_of(triangle, B, ["1", "2"]) == 1
    assert index_of(triangle, sv("00+"), ["1", "2"]) == 3


def test_lex_localization_full_base(triangle):
    loc = lex_localization(triangle, ["1", "2"], "++", "p")
    assert loc.as_dict() == {"+-0": 1, "+0+": 1, "0++": 1}
    assert loc.sigma(-A) == -1


def test_lex_localization_partial_base(triangle):
    loc = lex_localization(triangle, ["1"], "+", "p")
    assert loc.as_dict() == {"+-0": 1, "+0+": 1, "0++": 0}


def test_lex_localization_is_odd(om5):
    loc = lex_localization(om5, ["1", "2", "3"], "+-+", "p")
    for v in om5.cocircuits:
        assert loc.sigma(-v) == -loc.sigma(v)


def test_lex_localization_rejects_bad_specs(triangle):
    with pytest.raises(ValueError):
        lex_localization(triangle, ["1", "1"], "++", "p")
    with pytest.raises(ValueError):
        lex_localization(triangle, ["1", "2", "3"], "+++", "p")
    with pytest.raises(ValueError):
        lex_localization(triangle, ["1", "2"], "+0", "p")
    with pytest.raises(ValueError):
        lex_localization(triangle, ["1"], "++", "p")
    with pytest.raises(ValueError):
        lex_localization(triangle, ["1"], "+", "2")


def test_localization_storage_contract(triangle):
    with pytest.raises(ValueError):
        Localization(triangle, "p", {A: 1})
    with pytest.raises(ValueError):
        Localization(triangle, "p", {-A: 1, B: 1, C: 1})
    loc = Localization(triangle, "p", {A: 1, B: 1, C: -1})
    assert loc.sigma(C) == -1
    assert loc.sigma(-C) == 1
    with pytest.raises(ValueError):
        loc.sigma(sv("+++"))


# -- the extension construction ----------------------------------------------------


def test_lex_extend_full_base(triangle, triangle_ext):
    assert triangle_ext.elements == ("1", "2", "3", "p")
    assert strs(triangle_ext.representatives) == ["+--0", "+-0+", "+0++", "0+++"]
    assert triangle_ext.rank == 2
    assert triangle_ext.is_cocircuit(sv("-++0"))
    loc = lex_localization(triangle, ["1", "2"], "++", "p")
    assert extend(triangle, loc) == triangle_ext


def test_extend_parallel_element(triangle):
    om = lex_extend(triangle, ["1"], "+", "p")
    assert strs(om.representatives) == ["+-0+", "+0++", "0++0"]
    assert om.rank == 2
    # p duplicates element 1, so no pair produced a new zero-p cocircuit
    assert len(om.cocircuits) == 6


def test_extend_rejects_zero_localization(triangle):
    with pytest.raises(ValueError):
        extend(triangle, Localization(triangle, "p", {A: 0, B: 0, C: 0}))


def test_extend_rejects_foreign_localization(triangle, om5):
    loc = lex_localization(om5, ["1"], "+", "p")
    with pytest.raises(ValueError):
        extend(triangle, loc)


def test_validate_localization(triangle):
    good = lex_localization(triangle, ["1", "2"], "++", "p")
    assert validate_localization(triangle, good).ok
    flipped = Localization(triangle, "p", {C: 1, B: -1, A: 1})
    report = validate_localization(triangle, flipped)
    assert not report.ok
    assert report.issues


def test_parallel_localizations_validate(triangle, om5):
    p = Program(om5, "4", "5")
    for y0 in p.g_positive_cocircuits():
        loc = parallel_localization(p, y0, "h")
        assert validate_localization(om5, loc).ok


def test_old_cocircuits_follow_their_index(triangle, triangle_ext):
    """Extended old cocircuits carry at the new element the sign they show at
    the first base element in their support."""
    base = ["1", "2"]
    ppos = triangle_ext.position("p")
    for y in triangle_ext.cocircuits:
        if y.sign(ppos) == 0:
            continue
        idx = index_of(triangle_ext, y, base)
        assert idx <= 2
        assert y.sign(triangle_ext.position(base[idx - 1])) == y.sign(ppos)


def test_new_cocircuits_meet_the_base(triangle, triangle_ext):
    old = set(triangle.cocircuits)
    ppos = triangle_ext.position("p")
    for y in triangle_ext.cocircuits:
        if y.sign(ppos) != 0:
            continue
        assert y.restrict(range(3)) not in old
        assert index_of(triangle_ext, y, ["1", "2"]) <= 2


def test_lex_extension_splits_into_reorientation(om5):
    """A mixed-sign template is the positive template conjugated by
    reorienting the negatively signed base elements."""
    direct = lex_extend(om5, ["1", "2", "3"], "+-+", "p")
    rerouted = lex_extend(om5.reorient(["2"]), ["1", "2", "3"], "+++", "p").reorient(["2"])
    assert direct == rerouted


# -- parallel localizations -----------------------------------------------------------


def test_parallel_localization_triangle(prog_triangle):
    loc = parallel_localization(prog_triangle, A, "h")
    assert loc.as_dict() == {"+-0": 1, "+0+": 1, "0++": 0}
    assert loc.sigma(A) == 0
    assert validate_localization(prog_triangle.om, loc).ok


def test_parallel_localization_rejects_bad_vertex(prog_triangle):
    with pytest.raises(ValueError):
        parallel_localization(prog_triangle, sv("+++"), "h")
    with pytest.raises(ValueError):
        parallel_localization(prog_triangle, -A, "h")


def test_parallel_extension_preserves_directions(prog_triangle):
    loc = parallel_localization(prog_triangle, A, "h")
    om = extend(prog_triangle.om, loc)
    p = Program(om, "3", "1")
    assert edge_direction(p, sv("0++0"), sv("+0++")) == edge_direction(
        prog_triangle, A, B
    )


def test_lex_extension_preserves_directions(triangle_ext, prog_triangle):
    p = Program(triangle_ext, "3", "1")
    assert edge_direction(p, sv("0+++"), sv("+0++")) == edge_direction(
        prog_triangle, A, B
    )


# -- generating pairs --------------------------------------------------------------------


def test_corresponding_cocircuit(triangle_ext):
    z = corresponding_cocircuit(triangle_ext, "p", sv("-++0"), ["1", "2"])
    assert z == sv("0+++")


def test_corresponding_cocircuit_rejects_old(triangle, triangle_ext):
    with pytest.raises(ValueError):
        corresponding_cocircuit(triangle_ext, "p", sv("+0++"), ["1", "2"])
    with pytest.raises(ValueError):
        corresponding_cocircuit(triangle_ext, "p", sv("++++"), ["1", "2"])
    # an extended old cocircuit vanishing at p also vanishes on the base
    parallel = lex_extend(triangle, ["1"], "+", "p")
    with pytest.raises(ValueError):
        corresponding_cocircuit(parallel, "p", sv("0++0"), ["1"])


def test_corresponding_cocircuit_inverts_compositions(om6):
    """Every new cocircuit of a lexicographic extension is recovered from a
    unique conformal pair separated exactly at the new element."""
    base = ["1", "2", "4"]
    ext = lex_extend(om6, base, "+++", "p")
    ppos = ext.position("p")
    old = {v.restrict(range(om6.n)) for v in ext.cocircuits if v.sign(ppos) != 0}
    checked = 0
    for y in ext.cocircuits:
        if y.sign(ppos) != 0 or y.restrict(range(om6.n)) in old:
            continue
        z = corresponding_cocircuit(ext, "p", y, base)
        assert ext.is_cocircuit(z)
        assert index_of(ext, z, base) >= 2
        checked += 1
    assert checked > 0
