"""The SCA structure-constant file format.

Line-oriented UTF-8, strict and canonical:

    SCA/1
    kind lie|assoc|jordan
    dim N
    parity b1 ... bN
    unit i            (optional, assoc/jordan; 1-based basis index)
    unitv q1 ... qN   (alternative when the unit is not a basis vector)
    label i name      (optional, one per basis index)
    sc i j k q        (c_{ij}^k = q; 1-based; omitted entries are 0)
    end

Comments start with '#'.  Rationals must be normalized: lowest terms,
positive denominator, integer shorthand when the denominator is 1.
write_sca sorts entries by (i, j, k) and is byte-deterministic, so
write(parse(doc)) is the identity on canonical documents.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError, ValidationError
from .exact import unit_vec
from .superalg import StructureTable, SuperSpace

_RATIONAL = re.compile(r"-?\d+(/\d+)?\Z")


def _parse_rational(text: str, lineno: int) -> Fraction:
    if not _RATIONAL.match(text):
        raise ParseError(f"malformed rational {text!r}", lineno)
    value = Fraction(text)
    if str(value) != text:
        raise ParseError(f"non-normalized rational {text!r}", lineno)
    return value


def parse_sca(text: str) -> StructureTable:
    """Strict parse of an SCA document into a StructureTable."""
    lines = text.split("\n")
    fields = []
    for lineno, raw in enumerate(lines, start=1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            fields.append((lineno, stripped.split()))

    if not fields:
        raise ParseError("empty document")
    pos = 0

    def take():
        nonlocal pos
        if pos >= len(fields):
            raise ParseError("unexpected end of document", fields[-1][0])
        item = fields[pos]
        pos += 1
        return item

    lineno, tok = take()
    if tok != ["SCA/1"]:
        raise ParseError("expected header SCA/1", lineno)
    lineno, tok = take()
    if len(tok) != 2 or tok[0] != "kind" or tok[1] not in ("lie", "assoc", "jordan"):
        raise ParseError("expected 'kind lie|assoc|jordan'", lineno)
    kind = tok[1]
    lineno, tok = take()
    if len(tok) != 2 or tok[0] != "dim" or not tok[1].isdigit():
        raise ParseError("expected 'dim N'", lineno)
    dim = int(tok[1])
    if dim < 1:
        raise ParseError("dim must be positive", lineno)
    lineno, tok = take()
    if tok[0] != "parity" or len(tok) != dim + 1:
        raise ParseError(f"expected 'parity' with {dim} bits", lineno)
    if any(b not in ("0", "1") for b in tok[1:]):
        raise ParseError("parity bits must be 0 or 1", lineno)
    parity = tuple(int(b) for b in tok[1:])

    unit = None
    labels: dict[int, str] = {}
    entries: dict = {}
    seen = set()
    ended = False
    while pos < len(fields):
        lineno, tok = take()
        key = tok[0]
        if key == "unit":
            if unit is not None:
                raise ParseError("duplicate unit line", lineno)
            if len(tok) != 2 or not tok[1].isdigit():
                raise ParseError("expected 'unit i'", lineno)
            i = int(tok[1])
            if not 1 <= i <= dim:
                raise ParseError(f"unit index {i} out of range", lineno)
            unit = unit_vec(dim, i - 1)
        elif key == "unitv":
            if unit is not None:
                raise ParseError("duplicate unit line", lineno)
            if len(tok) != dim + 1:
                raise ParseError(f"expected 'unitv' with {dim} coordinates", lineno)
            unit = tuple(_parse_rational(t, lineno) for t in tok[1:])
        elif key == "label":
            if len(tok) != 3 or not tok[1].isdigit():
                raise ParseError("expected 'label i name'", lineno)
            i = int(tok[1])
            if not 1 <= i <= dim:
                raise ParseError(f"label index {i} out of range", lineno)
            if i in labels:
                raise ParseError(f"duplicate label for index {i}", lineno)
            labels[i] = tok[2]
        elif key == "sc":
            if len(tok) != 5:
                raise ParseError("expected 'sc i j k q'", lineno)
            try:
                i, j, k = int(tok[1]), int(tok[2]), int(tok[3])
            except ValueError:
                raise ParseError("sc indices must be integers", lineno) from None
            for idx in (i, j, k):
                if not 1 <= idx <= dim:
                    raise ParseError(f"sc index {idx} out of range", lineno)
            if (i, j, k) in seen:
                raise ParseError(f"duplicate entry ({i},{j},{k})", lineno)
            seen.add((i, j, k))
            c = _parse_rational(tok[4], lineno)
            if c == 0:
                raise ParseError("zero structure constants must be omitted", lineno)
            entries.setdefault((i - 1, j - 1), []).append((k - 1, c))
        elif key == "end":
            if len(tok) != 1:
                raise ParseError("junk after 'end'", lineno)
            ended = True
            break
        else:
            raise ParseError(f"unknown directive {key!r}", lineno)
    if not ended:
        raise ParseError("missing final 'end'", fields[-1][0])
    if pos < len(fields):
        raise ParseError("content after 'end'", fields[pos][0])

    label_tuple = None
    if labels:
        if len(labels) != dim:
            raise ParseError("labels must cover every basis index or be absent")
        label_tuple = tuple(labels[i + 1] for i in range(dim))
    try:
        space = SuperSpace(dim, parity, label_tuple)
        return StructureTable(
            space,
            kind,
            {key: tuple(sorted(terms)) for key, terms in entries.items()},
            unit=unit,
        )
    except ValidationError as exc:
        raise ValidationError(f"table invariant violated: {exc}") from exc


def write_sca(table: StructureTable) -> str:
    """Canonical serialization: sorted entries, normalized rationals,
    deterministic bytes."""
    out = ["SCA/1", f"kind {table.kind}", f"dim {table.space.dim}"]
    out.append("parity " + " ".join(str(p) for p in table.space.parity))
    if table.unit is not None:
        support = [(i, c) for i, c in enumerate(table.unit) if c != 0]
        if len(support) == 1 and support[0][1] == 1:
            out.append(f"unit {support[0][0] + 1}")
        else:
            out.append("unitv " + " ".join(str(c) for c in table.unit))
    if table.space.labels is not None:
        for i, name in enumerate(table.space.labels, start=1):
            out.append(f"label {i} {name}")
    rows = []
    for (i, j), terms in table.entries.items():
        for k, c in terms:
            rows.append((i + 1, j + 1, k + 1, c))
    rows.sort(key=lambda r: r[:3])
    for i, j, k, c in rows:
        out.append(f"sc {i} {j} {k} {c}")
    out.append("end")
    return "\n".join(out) + "\n"
