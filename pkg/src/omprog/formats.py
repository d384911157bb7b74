"""Text formats for matroids, matrices and orders, and the exact construction
of a realizable oriented matroid from an integer matrix.

A matroid document holds a rank line, an elements line, an optional note line,
then one sign string per cocircuit (over the characters +, - and 0, one column
per element). Comment lines start with # and blank lines are skipped.
Documents are closed under negation on parsing, so files may list one
representative per antipodal pair; writing emits the canonical representatives
in plain byte order, which makes round-trips byte identical.

Matrix files hold one integer row vector per line; order files hold one sign
string per line.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations

import sympy

from omprog.om import OrientedMatroid, ValidationReport, validate_cocircuits
from omprog.signs import SignVector


class OmFormatError(ValueError):
    """Raised on malformed document syntax (not on axiom violations)."""


def _content_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        out.append((lineno, line))
    return out


@dataclass
class OmDocument:
    """A parsed matroid document; vectors are closed under negation and
    deduplicated but not yet checked against the cocircuit axioms."""

    rank: int
    elements: tuple[str, ...]
    vectors: tuple[SignVector, ...]
    note: str | None = None
    _report: ValidationReport | None = field(default=None, repr=False)

    def validate(self) -> ValidationReport:
        if self._report is None:
            self._report = validate_cocircuits(
                self.vectors, rank=self.rank, ground_size=len(self.elements)
            )
        return self._report

    def matroid(self) -> OrientedMatroid:
        report = self.validate()
        if not report.ok:
            axioms = ", ".join(issue.axiom for issue in report.issues)
            raise ValueError(f"document violates cocircuit axioms: {axioms}")
        return OrientedMatroid(self.elements, self.vectors, rank=self.rank)


def parse_om(text: str) -> OmDocument:
    """Parse a matroid document, checking syntax only."""
    lines = _content_lines(text)
    if not lines:
        raise OmFormatError("empty document")
    lineno, line = lines[0]
    parts = line.split()
    if len(parts) != 2 or parts[0] != "rank":
        raise OmFormatError(f"line {lineno}: expected 'rank R'")
    try:
        rank = int(parts[1])
    except ValueError:
        raise OmFormatError(f"line {lineno}: rank must be an integer") from None
    if rank < 0:
        raise OmFormatError(f"line {lineno}: rank must be nonnegative")
    if len(lines) < 2:
        raise OmFormatError("missing elements line")
    lineno, line = lines[1]
    parts = line.split()
    if parts[0] != "elements" or len(parts) < 2:
        raise OmFormatError(f"line {lineno}: expected 'elements e1 e2 ...'")
    elements = tuple(parts[1:])
    if len(set(elements)) != len(elements):
        raise OmFormatError(f"line {lineno}: element names must be distinct")
    rest = lines[2:]
    note = None
    if rest and rest[0][1].split(maxsplit=1)[0] == "note":
        split = rest[0][1].split(maxsplit=1)
        note = split[1] if len(split) > 1 else ""
        rest = rest[1:]
    n = len(elements)
    seen: dict[SignVector, int] = {}
    for lineno, line in rest:
        if len(line) != n:
            raise OmFormatError(
                f"line {lineno}: sign string has length {len(line)}, expected {n}"
            )
        try:
            v = SignVector.from_string(line)
        except ValueError as exc:
            raise OmFormatError(f"line {lineno}: {exc}") from None
        seen.setdefault(v, lineno)
        seen.setdefault(-v, lineno)
    return OmDocument(rank=rank, elements=elements, vectors=tuple(sorted(seen, key=str)), note=note)


def write_om(om: OrientedMatroid, note: str | None = None) -> str:
    """Render a matroid as a document: canonical cocircuit representatives in
    byte order, one per antipodal pair."""
    for e in om.elements:
        if not e or any(c.isspace() for c in e) or e.startswith("#"):
            raise ValueError(f"element name {e!r} cannot be written")
    lines = [f"rank {om.rank}", "elements " + " ".join(om.elements)]
    if note is not None:
        if "\n" in note:
            raise ValueError("note must be a single line")
        lines.append(f"note {note}")
    lines.extend(str(v) for v in om.representatives)
    return "\n".join(lines) + "\n"


def read_om(path) -> OrientedMatroid:
    """Parse and fully validate a matroid document from a file."""
    with open(path, "r", encoding="ascii") as handle:
        return parse_om(handle.read()).matroid()


def parse_matrix(text: str) -> list[list[int]]:
    """Parse an integer matrix, one row per line."""
    rows = []
    width = None
    for lineno, line in _content_lines(text):
        try:
            row = [int(tok) for tok in line.split()]
        except ValueError:
            raise OmFormatError(f"line {lineno}: matrix entries must be integers") from None
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise OmFormatError(f"line {lineno}: ragged row of length {len(row)}")
        rows.append(row)
    if not rows:
        raise OmFormatError("empty matrix")
    if width == 0:
        raise OmFormatError("matrix rows must have at least one column")
    return rows


def parse_order(text: str, n: int | None = None) -> list[SignVector]:
    """Parse an order file: one sign string per line."""
    out = []
    for lineno, line in _content_lines(text):
        if n is not None and len(line) != n:
            raise OmFormatError(
                f"line {lineno}: sign string has length {len(line)}, expected {n}"
            )
        try:
            out.append(SignVector.from_string(line))
        except ValueError as exc:
            raise OmFormatError(f"line {lineno}: {exc}") from None
    return out


def write_order(vectors) -> str:
    return "".join(f"{v}\n" for v in vectors)


def om_from_matrix(rows, elements=None) -> OrientedMatroid:
    """Oriented matroid of the row vectors of an integer matrix, computed with
    exact integer arithmetic.

    Every cocircuit arises from a hyperplane of the row-space: for each
    maximal-rank proper subset of rows, an integer normal inside the row space
    orthogonal to the subset is produced via cofactors, and signing the scalar
    products with all rows yields the cocircuit. Realizable matroids built
    this way are Euclidean for every choice of objective and infinity element,
    which makes them reference instances.
    """
    rows = [tuple(int(x) for x in row) for row in rows]
    if not rows:
        raise ValueError("matrix must have at least one row")
    d = len(rows[0])
    if any(len(row) != d for row in rows):
        raise ValueError("matrix rows must have equal length")
    m = len(rows)
    if elements is None:
        elements = tuple(str(i + 1) for i in range(m))
    else:
        elements = tuple(elements)
        if len(elements) != m:
            raise ValueError("need one element name per matrix row")
    full = sympy.Matrix(rows)
    r = full.rank()
    basis_rows: list[int] = []
    for i in range(m):
        if len(basis_rows) == r:
            break
        if sympy.Matrix([rows[j] for j in basis_rows + [i]]).rank() == len(basis_rows) + 1:
            basis_rows.append(i)
    basis = sympy.Matrix([rows[i] for i in basis_rows])
    vectors: set[SignVector] = set()
    for subset in combinations(range(m), r - 1) if r >= 1 else []:
        sub = sympy.Matrix([rows[i] for i in subset]) if subset else sympy.zeros(0, d)
        if subset and sub.rank() != r - 1:
            continue
        coeff = sub * basis.T if subset else sympy.zeros(0, r)
        cof = []
        for j in range(r):
            minor = coeff[:, [c for c in range(r) if c != j]]
            det = minor.det() if minor.rows else sympy.Integer(1)
            cof.append((-1) ** j * det)
        normal = [
            sum(cof[k] * basis[k, c] for k in range(r)) for c in range(d)
        ]
        if all(x == 0 for x in normal):
            continue
        signs = [_int_sign(sum(normal[c] * row[c] for c in range(d))) for row in rows]
        v = SignVector.from_signs(signs)
        if v.is_zero():
            continue
        vectors.add(v)
        vectors.add(-v)
    report = validate_cocircuits(sorted(vectors, key=str), rank=r, ground_size=m)
    if not report.ok:
        axioms = ", ".join(issue.axiom for issue in report.issues)
        raise RuntimeError(f"matrix construction produced an invalid matroid: {axioms}")
    return OrientedMatroid(elements, sorted(vectors, key=str), rank=r)


def _int_sign(x) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def render_report(report: dict) -> str:
    """Stable JSON rendering of a command report."""
    return json.dumps(report, indent=2) + "\n"
