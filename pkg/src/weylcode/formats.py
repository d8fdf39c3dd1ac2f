"""Text formats for codes, prefixes, words, tableaux and Young-graph paths."""
from __future__ import annotations

import json
from typing import Iterator

import numpy as np

from .errors import ParseError, WeylCodeError
from .graphtransfer import DiagramPath
from .rankcode import check_code
from .tableaux import Tableau

EMPTY_DIAGRAM = "∅"


def format_ints(values) -> str:
    return ",".join(str(int(v)) for v in values)


def format_reals(values) -> str:
    return ",".join(f"{float(v):.17g}" for v in values)


format_code = format_ints
format_word = format_ints


def _split(line: str, lineno: int | None, convert):
    parts = [p.strip() for p in line.strip().split(",")]
    if not parts or any(p == "" for p in parts):
        raise ParseError(f"empty field in {line!r}", lineno)
    try:
        return [convert(p) for p in parts]
    except ValueError as exc:
        raise ParseError(str(exc), lineno) from None


def parse_ints(line: str, lineno: int | None = None) -> list[int]:
    return _split(line, lineno, int)


def parse_reals(line: str, lineno: int | None = None) -> np.ndarray:
    return np.array(_split(line, lineno, float))


def parse_code(line: str, lineno: int | None = None) -> np.ndarray:
    vals = parse_ints(line, lineno)
    try:
        return check_code(vals)
    except WeylCodeError as exc:
        raise ParseError(str(exc), lineno) from None


def parse_numbers(line: str, lineno: int | None = None) -> list:
    """Integers when every field is integral, otherwise floats."""
    try:
        return parse_ints(line, lineno)
    except ParseError:
        return parse_reals(line, lineno).tolist()


def iter_lines(text: str) -> Iterator[tuple[int, str]]:
    """Non-blank, non-comment lines with 1-based line numbers."""
    for lineno, line in enumerate(text.splitlines(), start=1):
        s = line.strip()
        if s and not s.startswith("#"):
            yield lineno, s


def format_tableau(t: Tableau) -> str:
    def fmt(v):
        return str(v) if isinstance(v, (int, np.integer)) else f"{float(v):.17g}"

    return "\n".join(",".join(fmt(v) for v in row) for row in t.rows)


def parse_tableau(text: str) -> Tableau:
    """Row-per-line text, or a nested list literal such as ``[[1,2],[3]]``."""
    s = text.strip()
    if s.startswith("["):
        try:
            rows = json.loads(s)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad tableau literal: {exc.msg}", exc.lineno) from None
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise ParseError("tableau literal must be a list of lists")
    else:
        rows = [parse_numbers(line, n) for n, line in iter_lines(s)]
    try:
        return Tableau(tuple(tuple(r) for r in rows))
    except WeylCodeError as exc:
        raise ParseError(str(exc)) from None


def tableau_literal(t: Tableau) -> str:
    return json.dumps(t.tolist(), separators=(",", ":"))


def format_young_path(p: DiagramPath) -> str:
    return ";".join(format_ints(v) if v else EMPTY_DIAGRAM for v in p.vertices)


def parse_young_path(text: str) -> DiagramPath:
    chain = []
    for part in text.strip().split(";"):
        part = part.strip()
        chain.append(() if part == EMPTY_DIAGRAM else tuple(parse_ints(part)))
    return DiagramPath(tuple(chain))
