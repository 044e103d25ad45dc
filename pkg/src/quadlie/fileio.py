"""Line-oriented algebra file format.

    # comments start with '#'
    dim N
    basis name1 name2 ...
    bracket a b = c1 n1, c2 n2, ...
    form a b = c

Coefficients are integers or p/q. Only one orientation per bracket pair is
allowed; omitted pairs are zero and antisymmetric completion is automatic.
Form entries are completed symmetrically; conflicting duplicates are errors.
"""

from __future__ import annotations

import re
from typing import Optional, Tuple

from .linalg import Matrix, Q, parse_q, qstr
from .lie import LieAlgebra
from .forms import BilinearForm

_LABEL_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")


class ParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno
        self.message = message


def _parse_terms(text: str, index: dict, lineno: int) -> dict:
    entry = {}
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            raise ParseError(lineno, "empty term")
        parts = chunk.split()
        if len(parts) != 2:
            raise ParseError(lineno, f"term must be 'coeff label': {chunk!r}")
        try:
            coeff = parse_q(parts[0])
        except ValueError as exc:
            raise ParseError(lineno, str(exc)) from None
        if parts[1] not in index:
            raise ParseError(lineno, f"unknown label {parts[1]!r}")
        k = index[parts[1]]
        if k in entry:
            raise ParseError(lineno, f"label {parts[1]!r} repeated in one bracket")
        entry[k] = coeff
    return entry


def parse(text: str) -> Tuple[LieAlgebra, Optional[BilinearForm]]:
    """Parse an algebra file; returns the algebra and its form, if any."""
    dim = None
    labels = None
    index = {}
    table = {}
    seen_pairs = {}
    form_entries = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(None, 1)
        keyword = parts[0]
        rest = parts[1] if len(parts) > 1 else ""
        if keyword == "dim":
            if dim is not None:
                raise ParseError(lineno, "duplicate dim line")
            try:
                dim = int(rest.strip())
            except ValueError:
                raise ParseError(lineno, f"bad dimension {rest!r}") from None
            if dim < 0:
                raise ParseError(lineno, "dimension must be nonnegative")
        elif keyword == "basis":
            if dim is None:
                raise ParseError(lineno, "basis line before dim line")
            if labels is not None:
                raise ParseError(lineno, "duplicate basis line")
            labels = tuple(rest.split())
            if len(labels) != dim:
                raise ParseError(lineno,
                                 f"expected {dim} labels, got {len(labels)}")
            for lbl in labels:
                if not _LABEL_RE.match(lbl):
                    raise ParseError(lineno, f"bad label {lbl!r}")
                if lbl in index:
                    raise ParseError(lineno, f"duplicate label {lbl!r}")
                index[lbl] = len(index)
        elif keyword in ("bracket", "form"):
            if labels is None:
                raise ParseError(lineno, f"{keyword} line before basis line")
            m = re.match(r"^(\S+)\s+(\S+)\s*=\s*(.*)$", rest)
            if not m:
                raise ParseError(lineno, f"malformed {keyword} line")
            a, b, rhs = m.group(1), m.group(2), m.group(3).strip()
            for lbl in (a, b):
                if lbl not in index:
                    raise ParseError(lineno, f"unknown label {lbl!r}")
            i, j = index[a], index[b]
            if keyword == "bracket":
                if i == j:
                    raise ParseError(lineno, "bracket of a label with itself")
                key = (min(i, j), max(i, j))
                if key in seen_pairs:
                    raise ParseError(
                        lineno, f"duplicate bracket for pair {a!r}, {b!r} "
                        f"(first defined at line {seen_pairs[key]})")
                seen_pairs[key] = lineno
                entry = _parse_terms(rhs, index, lineno) if rhs else {}
                table[(i, j)] = entry
            else:
                try:
                    value = parse_q(rhs)
                except ValueError as exc:
                    raise ParseError(lineno, str(exc)) from None
                key = (min(i, j), max(i, j))
                if key in form_entries and form_entries[key] != value:
                    raise ParseError(
                        lineno, f"conflicting form entries for {a!r}, {b!r}")
                form_entries[key] = value
        else:
            raise ParseError(lineno, f"unknown keyword {keyword!r}")
    if dim is None:
        raise ParseError(0, "missing dim line")
    if labels is None:
        if dim == 0:
            labels = ()
        else:
            raise ParseError(0, "missing basis line")
    algebra = LieAlgebra(labels, table)
    form = None
    if form_entries:
        rows = [[Q(0)] * dim for _ in range(dim)]
        for (i, j), v in form_entries.items():
            rows[i][j] = v
            rows[j][i] = v
        form = BilinearForm(algebra, Matrix(rows, dim))
    return algebra, form


def serialize(algebra: LieAlgebra, form: Optional[BilinearForm] = None) -> str:
    """Serialize to the algebra file format; parse(serialize(...)) is the
    identity on structure constants and Gram entries."""
    lines = [f"dim {algebra.dim}"]
    if algebra.dim:
        lines.append("basis " + " ".join(algebra.labels))
    for (i, j) in sorted(algebra.table):
        comp = algebra.table[(i, j)]
        terms = ", ".join(f"{qstr(c)} {algebra.labels[k]}"
                          for k, c in sorted(comp.items()))
        lines.append(f"bracket {algebra.labels[i]} {algebra.labels[j]} = {terms}")
    if form is not None:
        g = form.gram.entries
        for i in range(algebra.dim):
            for j in range(i, algebra.dim):
                if g[i][j] != 0:
                    lines.append(f"form {algebra.labels[i]} "
                                 f"{algebra.labels[j]} = {qstr(g[i][j])}")
    return "\n".join(lines) + "\n"
