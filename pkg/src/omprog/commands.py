"""Command layer shared by the command line interface and the HTTP service.

Every command takes document text (not file paths) and returns a plain report
dict with stable key order: command, inputs, verdict, then any witnesses,
orders or documents the command produces, then timing when requested. The
verdict is the boolean outcome for decision commands and simply records
success for generative commands; malformed inputs and violated preconditions
raise ValueError subclasses instead.
"""

from __future__ import annotations

import time

from omprog.extend import extend, lex_extend, parallel_localization
from omprog.formats import OmDocument, om_from_matrix, parse_matrix, parse_om, parse_order, write_om
from omprog.om import OrientedMatroid
from omprog.programs import Program, is_euclidean_om
from omprog.shelling import (
    shelling_order_tope,
    shelling_order_whole,
    verify_recursive_atom_ordering,
)
from omprog.signs import SignVector
from omprog.sweeps import build_sweep, sweep_linear_extension, verify_sweep


def _load(text: str) -> OrientedMatroid:
    return parse_om(text).matroid()


def _timed(report: dict, started: float | None) -> dict:
    if started is not None:
        report["timing"] = {"seconds": round(time.perf_counter() - started, 6)}
    return report


def validate_command(text: str, timing: bool = False) -> dict:
    started = time.perf_counter() if timing else None
    document = parse_om(text)
    result = document.validate()
    report = {
        "command": "validate",
        "inputs": {"rank": document.rank, "elements": list(document.elements)},
        "verdict": result.ok,
        "witnesses": [
            {"axiom": issue.axiom, "witness": issue.witness} for issue in result.issues
        ],
        "rank_computed": result.rank_computed,
    }
    return _timed(report, started)


def euclidean_command(
    text: str,
    g: str | None = None,
    f: str | None = None,
    all_pairs: bool = False,
    timing: bool = False,
) -> dict:
    started = time.perf_counter() if timing else None
    om = _load(text)
    if (g is None) != (f is None):
        raise ValueError("need both g and f, or neither")
    if g is not None and all_pairs:
        raise ValueError("cannot combine a single pair with all-pairs")
    if g is not None:
        ok, witness = Program(om, g, f).euclidean()
        report = {
            "command": "euclidean",
            "inputs": {"g": g, "f": f},
            "verdict": ok,
            "witnesses": None if witness is None else witness.as_dict(),
        }
    else:
        ok, witness = is_euclidean_om(om)
        if witness is not None:
            witness = {
                "g": witness["g"],
                "f": witness["f"],
                "cycle": witness["witness"].as_dict(),
            }
        report = {
            "command": "euclidean",
            "inputs": {"all_pairs": True},
            "verdict": ok,
            "witnesses": witness,
        }
    return _timed(report, started)


def lex_extend_command(
    text: str, base: list[str], signs: str, name: str, timing: bool = False
) -> dict:
    started = time.perf_counter() if timing else None
    om = _load(text)
    result = lex_extend(om, base, list(signs), name)
    report = {
        "command": "lex-extend",
        "inputs": {"base": list(base), "signs": signs, "name": name},
        "verdict": True,
        "document": write_om(result),
    }
    return _timed(report, started)


def parallel_extend_command(
    text: str, g: str, f: str, through: str, name: str, timing: bool = False
) -> dict:
    started = time.perf_counter() if timing else None
    om = _load(text)
    program = Program(om, g, f)
    y0 = SignVector.from_string(through)
    if y0.n != om.n:
        raise ValueError(f"through-vertex has length {y0.n}, expected {om.n}")
    loc = parallel_localization(program, y0, name)
    result = extend(om, loc)
    report = {
        "command": "parallel-extend",
        "inputs": {"g": g, "f": f, "through": through, "name": name},
        "verdict": True,
        "localization": loc.as_dict(),
        "document": write_om(result),
    }
    return _timed(report, started)


def sweep_command(
    text: str,
    g: str,
    f: str,
    order_text: str | None = None,
    timing: bool = False,
) -> dict:
    started = time.perf_counter() if timing else None
    om = _load(text)
    program = Program(om, g, f)
    if order_text is None:
        order = sweep_linear_extension(program)
    else:
        order = parse_order(order_text, n=om.n)
    sweep = build_sweep(program, order)
    result = verify_sweep(program, sweep)
    report = {
        "command": "sweep",
        "inputs": {"g": g, "f": f, "order_given": order_text is not None},
        "verdict": result.ok,
        "witnesses": list(result.issues),
        "order": [str(v) for v in sweep.order],
        "names": list(sweep.names),
        "staircase": sweep.staircase(),
        "windows": [list(w) for w in sweep.windows],
        "document": write_om(sweep.final),
    }
    return _timed(report, started)


def shell_command(
    text: str,
    f: str,
    scope: str,
    g: str | None = None,
    basis: list[str] | None = None,
    timing: bool = False,
) -> dict:
    started = time.perf_counter() if timing else None
    om = _load(text)
    if scope == "tope":
        if g is None:
            raise ValueError("tope scope needs the infinity element g")
        order = shelling_order_tope(Program(om, g, f))
    elif scope == "whole":
        if basis is None:
            raise ValueError("whole scope needs an ordered basis")
        order = shelling_order_whole(om, f, basis)
    else:
        raise ValueError(f"unknown scope {scope!r}")
    report = {
        "command": "shell",
        "inputs": {"f": f, "scope": scope, "g": g, "basis": basis},
        "verdict": order.verified,
        "order": [str(v) for v in order.atoms],
        "qsets": [sorted(str(v) for v in q) for q in order.qsets],
    }
    return _timed(report, started)


def verify_shelling_command(
    text: str,
    f: str,
    order_text: str,
    g: str | None = None,
    timing: bool = False,
) -> dict:
    started = time.perf_counter() if timing else None
    om = _load(text)
    if g is not None:
        from omprog.programs import feasible_region
        from omprog.om import FaceLattice

        program = Program(om, g, f)
        lattice = FaceLattice(feasible_region(program), om.n)
        order = parse_order(order_text, n=om.n)
        scope = "tope"
    else:
        deletion = om.minor(delete=[f])
        lattice = deletion.covectors()
        order = parse_order(order_text, n=deletion.n)
        scope = "whole"
    verdict = verify_recursive_atom_ordering(lattice, order)
    report = {
        "command": "verify-shelling",
        "inputs": {"f": f, "g": g, "scope": scope},
        "verdict": verdict,
        "order": [str(v) for v in order],
    }
    return _timed(report, started)


def from_matrix_command(matrix_text: str, timing: bool = False) -> dict:
    started = time.perf_counter() if timing else None
    rows = parse_matrix(matrix_text)
    om = om_from_matrix(rows)
    report = {
        "command": "from-matrix",
        "inputs": {"rows": len(rows), "columns": len(rows[0])},
        "verdict": True,
        "document": write_om(om),
    }
    return _timed(report, started)
