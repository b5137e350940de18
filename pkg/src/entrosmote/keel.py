"""KEEL ``.dat`` and CSV ingestion, two-class reduction, and serialization.

KEEL files carry ``@relation``, ``@attribute``, optional ``@inputs`` /
``@outputs`` headers followed by ``@data`` and comma-separated rows. Nominal
input attributes are integer-coded in declaration order; the class attribute
keeps its raw textual values until :func:`reduce_two_class` maps them onto
positive/negative. Attribute range declarations are parsed but not enforced.

CSV is RFC-4180-style with a header row and the class in the last column.
"""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass

import numpy as np

from .data import NEGATIVE, POSITIVE, Dataset
from .errors import DataError, ParseError


@dataclass(frozen=True)
class AttributeDecl:
    name: str
    kind: str  # real | integer | nominal
    values: tuple[str, ...] = ()  # nominal value set, declaration order
    declared_range: tuple[float, float] | None = None


@dataclass(frozen=True)
class KeelHeader:
    relation_name: str
    attributes: tuple[AttributeDecl, ...]
    inputs: tuple[str, ...]
    outputs: str

    def __post_init__(self):
        names = {a.name for a in self.attributes}
        for n in (*self.inputs, self.outputs):
            if n not in names:
                raise ParseError(f"@inputs/@outputs names unknown attribute {n!r}")


@dataclass(frozen=True)
class TwoClassMapping:
    positive_values: frozenset[str]
    negative_values: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, "positive_values", frozenset(map(str, self.positive_values)))
        object.__setattr__(self, "negative_values", frozenset(map(str, self.negative_values)))
        if self.positive_values & self.negative_values:
            raise ValueError("positive and negative value sets overlap")


@dataclass(frozen=True)
class RawDataset:
    """Parsed rows before two-class reduction: numeric inputs, raw class tags."""

    features: np.ndarray
    class_values: tuple[str, ...]
    attribute_names: tuple[str, ...]


_ATTR_RE = re.compile(
    r"@attribute\s+(\S+)\s+(.*)$",
    re.IGNORECASE,
)


def _parse_attribute(line: str, lineno: int) -> AttributeDecl:
    m = _ATTR_RE.match(line)
    if not m:
        raise ParseError(f"line {lineno}: malformed @attribute line")
    name, rest = m.group(1), m.group(2).strip()
    if rest.startswith("{"):
        body = rest.strip("{} ")
        values = tuple(v.strip() for v in body.split(",") if v.strip())
        return AttributeDecl(name, "nominal", values)
    kind_match = re.match(r"(real|integer)\s*(\[([^\]]*)\])?", rest, re.IGNORECASE)
    if not kind_match:
        raise ParseError(f"line {lineno}: unknown attribute kind {rest!r}")
    kind = kind_match.group(1).lower()
    declared = None
    if kind_match.group(3):
        parts = kind_match.group(3).split(",")
        if len(parts) == 2:
            try:
                declared = (float(parts[0]), float(parts[1]))
            except ValueError:
                declared = None
    return AttributeDecl(name, kind, declared_range=declared)


def parse_keel(text: str) -> tuple[KeelHeader, RawDataset]:
    """Parse a KEEL .dat stream. Blank lines in the data section are skipped."""
    relation = ""
    attributes: list[AttributeDecl] = []
    inputs: tuple[str, ...] = ()
    outputs = ""
    data_start = None
    lines = text.splitlines()
    for i, raw in enumerate(lines):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        low = line.lower()
        if low.startswith("@relation"):
            relation = line.split(None, 1)[1] if len(line.split(None, 1)) > 1 else ""
        elif low.startswith("@attribute"):
            attributes.append(_parse_attribute(line, i + 1))
        elif low.startswith("@inputs"):
            inputs = tuple(v.strip() for v in line.split(None, 1)[1].split(","))
        elif low.startswith("@outputs"):
            outputs = line.split(None, 1)[1].strip()
        elif low.startswith("@data"):
            data_start = i + 1
            break
        else:
            raise ParseError(f"line {i + 1}: unexpected header line {line!r}")
    if data_start is None:
        raise ParseError(f"line {len(lines)}: missing @data section")
    if not attributes:
        raise ParseError("no @attribute declarations before @data")
    if not outputs:
        outputs = attributes[-1].name
    if not inputs:
        inputs = tuple(a.name for a in attributes if a.name != outputs)
    header = KeelHeader(relation, tuple(attributes), inputs, outputs)

    by_name = {a.name: a for a in attributes}
    input_decls = [by_name[n] for n in inputs]
    out_index = [a.name for a in attributes].index(outputs)
    in_indices = [[a.name for a in attributes].index(n) for n in inputs]

    rows: list[list[float]] = []
    class_values: list[str] = []
    for i in range(data_start, len(lines)):
        line = lines[i].strip()
        if not line or line.startswith("%"):
            continue
        fields = [f.strip() for f in line.split(",")]
        if len(fields) != len(attributes):
            raise ParseError(
                f"line {i + 1}: row has {len(fields)} fields, expected {len(attributes)}"
            )
        row = []
        for decl, idx in zip(input_decls, in_indices):
            tok = fields[idx]
            if decl.kind == "nominal":
                if tok not in decl.values:
                    raise ParseError(
                        f"line {i + 1}: unknown nominal value {tok!r} for {decl.name}"
                    )
                row.append(float(decl.values.index(tok)))
            else:
                try:
                    row.append(float(tok))
                except ValueError:
                    raise ParseError(
                        f"line {i + 1}: non-numeric value {tok!r} for {decl.name}"
                    ) from None
        out_decl = attributes[out_index]
        tok = fields[out_index]
        if out_decl.kind == "nominal" and out_decl.values and tok not in out_decl.values:
            raise ParseError(f"line {i + 1}: unknown class value {tok!r}")
        rows.append(row)
        class_values.append(tok)

    features = np.array(rows, dtype=np.float64).reshape(len(rows), len(inputs))
    return header, RawDataset(features, tuple(class_values), tuple(inputs))


def parse_csv(text: str) -> RawDataset:
    """Parse CSV with a header row; the last column is the class."""
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("empty CSV stream") from None
    if len(header) < 2:
        raise ParseError("CSV needs at least one feature column plus a class column")
    names = tuple(h.strip() for h in header[:-1])
    rows: list[list[float]] = []
    class_values: list[str] = []
    for i, fields in enumerate(reader, start=2):
        if not fields:
            continue
        if len(fields) != len(header):
            raise ParseError(f"line {i}: row has {len(fields)} fields, expected {len(header)}")
        try:
            rows.append([float(tok) for tok in fields[:-1]])
        except ValueError:
            raise ParseError(f"line {i}: non-numeric feature value") from None
        class_values.append(fields[-1].strip())
    features = np.array(rows, dtype=np.float64).reshape(len(rows), len(names))
    return RawDataset(features, tuple(class_values), names)


def reduce_two_class(raw: RawDataset, mapping: TwoClassMapping) -> Dataset:
    """Map raw class values onto positive/negative labels."""
    labels = np.empty(len(raw.class_values), dtype=bool)
    for i, v in enumerate(raw.class_values):
        if v in mapping.positive_values:
            labels[i] = True
        elif v in mapping.negative_values:
            labels[i] = False
        else:
            raise DataError(f"class value {v!r} not covered by the two-class mapping")
    if labels.size and labels.all():
        raise DataError("mapping leaves no negative class")
    return Dataset(raw.features, labels, raw.attribute_names)


def mapping_from_positive(raw: RawDataset, positive_values) -> TwoClassMapping:
    """Build a mapping where everything not listed as positive is negative."""
    pos = frozenset(map(str, positive_values))
    seen = frozenset(raw.class_values)
    return TwoClassMapping(pos & seen if pos & seen else pos, seen - pos)


def _format_value(x: float) -> str:
    return repr(float(x))


def write_dataset(d: Dataset, format: str = "csv", relation: str = "balanced") -> str:
    """Serialize a dataset; values round-trip at full float precision."""
    if d.n_rows == 0:
        raise DataError("refusing to write an empty dataset")
    label_tokens = [POSITIVE if y else NEGATIVE for y in d.labels]
    if format == "csv":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow([*d.attribute_names, "class"])
        for row, tok in zip(d.features, label_tokens):
            writer.writerow([*(_format_value(v) for v in row), tok])
        return out.getvalue()
    if format == "keel":
        lines = [f"@relation {relation}"]
        for name in d.attribute_names:
            col = d.features[:, d.attribute_names.index(name)]
            lines.append(f"@attribute {name} real [{col.min()}, {col.max()}]")
        lines.append(f"@attribute class {{{POSITIVE}, {NEGATIVE}}}")
        lines.append(f"@inputs {', '.join(d.attribute_names)}")
        lines.append("@outputs class")
        lines.append("@data")
        for row, tok in zip(d.features, label_tokens):
            lines.append(",".join([*(_format_value(v) for v in row), tok]))
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown output format {format!r}; expected csv or keel")


def read_dataset(text: str, format: str, positive_values=None) -> Dataset:
    """Parse and reduce in one step.

    When ``positive_values`` is None the class values must already be the
    positive/negative tokens written by :func:`write_dataset`.
    """
    if format == "keel":
        _, raw = parse_keel(text)
    elif format == "csv":
        raw = parse_csv(text)
    else:
        raise ValueError(f"unknown input format {format!r}; expected csv or keel")
    if positive_values is None:
        positive_values = {POSITIVE}
    return reduce_two_class(raw, mapping_from_positive(raw, positive_values))
