"""Scenario files: a line-based description of verification runs.

Grammar (one directive per line; '#' starts a comment; blank lines ignored):

    file        :=  { scenario }
    scenario    :=  "scenario" ID NL { property NL } "end" NL
    property    :=  "field" FIELD
                 |  "space" SPACE
                 |  "suites" SUITE { SUITE }
                 |  "rescale" SCALAR { SCALAR }
                 |  "similarity" SPACE ";" MATRIX
                 |  "budget" INT
    FIELD       :=  "gf(2)" | "gf(3)" | "gf(5)" | "gf(7)" | "gf(11)" | "gf(13)"
                 |  "gf(4)" | "q"
    SPACE       :=  "diag(" SCALAR {"," SCALAR} ")"
                 |  "zero(" INT ")"
                 |  "hyperbolic2"                      # dimension 2, Q = x0 x1
                 |  "ex2"                              # dimension 4, Q = x0 x1 + x2 x3
                 |  "form(" SCALAR {"," SCALAR} [";" BENTRY {"," BENTRY}] ")"
    BENTRY      :=  "b" DIGIT DIGIT "=" SCALAR         # B(e_i, e_j), i < j
    MATRIX      :=  "[[" SCALAR {"," SCALAR} "]" {",[" ... "]"} "]"
    SUITE       :=  "core" | "lipschitz" | "ortho" | "theorems" | "tables"
    SCALAR      :=  integer | fraction a/b | "w" | "w+1"   (per the field)

A combined field:space shorthand, e.g. ``gf(3):diag(1,1)``, is accepted by
the CLI --space flag and uses the same SPACE syntax.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .fields import parse_field
from .metric import QuadraticSpace, hyperbolic_pair, hyperbolic_plane, zero_space


class ParseError(ValueError):
    def __init__(self, line_no, message):
        super().__init__("line %d: %s" % (line_no, message))
        self.line_no = line_no


class ValidationError(ValueError):
    def __init__(self, field_name, message):
        super().__init__("%s: %s" % (field_name, message))
        self.field_name = field_name


BASE_SUITES = ("core", "lipschitz", "ortho", "theorems", "tables")


@dataclass
class Scenario:
    id: str
    field: object
    space: QuadraticSpace
    suites: tuple = BASE_SUITES
    rescale: tuple = ()
    similarity: object = None  # (target_space, matrix_rows) or None
    budget: object = None


def parse_space(field, text):
    """Parse a space construction string over the given field."""
    text = text.strip()
    if text == "hyperbolic2":
        return hyperbolic_plane(field)
    if text == "ex2":
        return hyperbolic_pair(field)
    if text.startswith("zero(") and text.endswith(")"):
        n = int(text[5:-1])
        if n < 0:
            raise ValidationError("space", "dimension must be nonnegative")
        return zero_space(field, n)
    if text.startswith("diag(") and text.endswith(")"):
        body = text[5:-1].strip()
        vals = [field.parse_scalar(t) for t in body.split(",")] if body else []
        return QuadraticSpace(field, vals)
    if text.startswith("form(") and text.endswith(")"):
        body = text[5:-1]
        if ";" in body:
            qpart, bpart = body.split(";", 1)
        else:
            qpart, bpart = body, ""
        qvals = [field.parse_scalar(t) for t in qpart.split(",")] if qpart.strip() else []
        b_upper = {}
        if bpart.strip():
            for entry in bpart.split(","):
                entry = entry.strip()
                if not entry.startswith("b") or "=" not in entry:
                    raise ValidationError("space", "bad polar entry %r" % entry)
                idx, val = entry[1:].split("=", 1)
                if len(idx) != 2 or not idx.isdigit():
                    raise ValidationError("space", "bad polar index in %r" % entry)
                i, j = int(idx[0]), int(idx[1])
                if not i < j < len(qvals):
                    raise ValidationError("space", "polar index out of range in %r" % entry)
                b_upper[(i, j)] = field.parse_scalar(val)
        return QuadraticSpace(field, qvals, b_upper)
    raise ValidationError("space", "unknown space construction %r" % text)


def parse_field_and_space(text):
    """Parse the CLI shorthand field:space, e.g. gf(3):diag(1,1)."""
    if ":" not in text:
        raise ValidationError("space", "expected field:space, e.g. gf(3):diag(1,1)")
    field_text, space_text = text.split(":", 1)
    try:
        field = parse_field(field_text)
    except ValueError as exc:
        raise ValidationError("field", str(exc)) from None
    return field, parse_space(field, space_text)


def parse_matrix(field, text):
    text = text.strip()
    if not (text.startswith("[[") and text.endswith("]]")):
        raise ValidationError("similarity", "matrix must look like [[a,b],[c,d]]")
    rows = []
    for row_text in text[2:-2].split("],["):
        rows.append(tuple(field.parse_scalar(t) for t in row_text.split(",")))
    if any(len(r) != len(rows) for r in rows):
        raise ValidationError("similarity", "matrix must be square")
    return tuple(rows)


def load_scenarios(lines, source="<scenario>"):
    """Parse scenario text (an iterable of lines) into validated scenarios."""
    scenarios = []
    ids = set()
    current = None
    props = None
    for no, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split(None, 1)
        head = tokens[0]
        rest = tokens[1].strip() if len(tokens) > 1 else ""
        if head == "scenario":
            if current is not None:
                raise ParseError(no, "nested scenario (missing 'end'?)")
            if not rest:
                raise ParseError(no, "scenario needs an id")
            if rest in ids:
                raise ValidationError("id", "duplicate scenario id %r" % rest)
            ids.add(rest)
            current = rest
            props = {"line": no}
            continue
        if current is None:
            raise ParseError(no, "directive outside a scenario block: %r" % line)
        if head == "end":
            scenarios.append(_finish_scenario(current, props))
            current, props = None, None
        elif head in ("field", "space", "suites", "rescale", "similarity", "budget"):
            if head in ("field", "space", "similarity", "budget") and head in props:
                raise ParseError(no, "duplicate %r directive" % head)
            props.setdefault(head, [])
            props[head].append((no, rest))
        else:
            raise ParseError(no, "unknown directive %r" % head)
    if current is not None:
        raise ParseError(props["line"], "scenario %r not closed with 'end'" % current)
    return scenarios


def _finish_scenario(sid, props):
    if "field" not in props:
        raise ValidationError("field", "scenario %r has no field" % sid)
    no, text = props["field"][0]
    try:
        field = parse_field(text)
    except ValueError as exc:
        raise ValidationError("field", str(exc)) from None
    if "space" not in props:
        raise ValidationError("space", "scenario %r has no space" % sid)
    _, space_text = props["space"][0]
    space = parse_space(field, space_text)

    suites = BASE_SUITES
    if "suites" in props:
        _, text = props["suites"][0]
        toks = tuple(text.split())
        for t in toks:
            if t not in BASE_SUITES:
                raise ValidationError("suites", "unknown suite %r" % t)
        suites = toks

    rescale = ()
    if "rescale" in props:
        vals = []
        for _, text in props["rescale"]:
            for tok in text.split():
                c = field.parse_scalar(tok)
                if c.is_zero():
                    raise ValidationError("rescale", "rescaling constant must be nonzero")
                vals.append(c)
        rescale = tuple(vals)

    similarity = None
    if "similarity" in props:
        _, text = props["similarity"][0]
        if ";" not in text:
            raise ValidationError("similarity", "expected: similarity SPACE ; MATRIX")
        space_text, mat_text = text.split(";", 1)
        target = parse_space(field, space_text.strip())
        matrix = parse_matrix(field, mat_text.strip())
        if len(matrix) != space.dim:
            raise ValidationError("similarity", "matrix size does not match the space")
        similarity = (target, matrix)

    budget = None
    if "budget" in props:
        _, text = props["budget"][0]
        budget = int(text)
        if budget <= 0:
            raise ValidationError("budget", "budget must be positive")

    return Scenario(sid, field, space, suites, rescale, similarity, budget)


def load_scenario_file(path):
    with open(path, "r", encoding="utf-8") as fh:
        return load_scenarios(fh, source=path)
