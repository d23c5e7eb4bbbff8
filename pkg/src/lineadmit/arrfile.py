"""Plain-text arrangement files.

::

    # comments start with '#'
    name = ex2
    L_0: 0 0 1
    L_1: 1 0 0
    [system half]
    L_0 = 1/2
    L_1 = 1/2

Coefficients and classes are exact rationals (``3``, ``-5/2``); decimals are
rejected. Lines missing from a system get class 0; classes are reduced mod 1
and must sum to an integer.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from .admissibility import LocalSystem
from .geometry import DegenerateInput, canonicalize_line
from .incidence import Arrangement, ArrangementError

RATIONAL = re.compile(r"[+-]?\d+(?:/\d+)?")
LABEL = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
SECTION = re.compile(r"\[\s*system\s+(\S+)\s*\]")


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1, source: str = "<string>"):
        super().__init__(f"{source}:{line}:{column}: {message}")
        self.line = line
        self.column = column


@dataclass
class ArrangementFile:
    arrangement: Arrangement
    systems: Dict[str, LocalSystem] = field(default_factory=dict)

    @property
    def name(self) -> str:
        return self.arrangement.name


def _rational(tok: str, line: int, col: int, source: str) -> Fraction:
    if not RATIONAL.fullmatch(tok):
        hint = " (decimals are not accepted; write p/q)" if "." in tok else ""
        raise ParseError(f"malformed rational {tok!r}{hint}", line, col, source)
    try:
        return Fraction(tok)
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in {tok!r}", line, col, source) from None


def _tokens(text: str, offset: int):
    """Whitespace-separated tokens with their 1-based columns."""
    for m in re.finditer(r"\S+", text):
        yield m.group(), offset + m.start() + 1


def parse_text(text: str, source: str = "<string>") -> ArrangementFile:
    name = ""
    labels: List[str] = []
    rows = []
    where: List[int] = []
    raw_systems: Dict[str, Dict[str, Tuple[Fraction, int]]] = {}
    sys_origin: Dict[str, int] = {}
    current: Optional[str] = None

    for ln, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].rstrip()
        if not body.strip():
            continue
        indent = len(body) - len(body.lstrip())
        stripped = body.strip()
        sec = SECTION.fullmatch(stripped)
        if sec:
            current = sec.group(1)
            if current in raw_systems:
                raise ParseError(f"system {current!r} defined twice", ln, indent + 1, source)
            raw_systems[current] = {}
            sys_origin[current] = ln
            continue
        if stripped.startswith("["):
            raise ParseError(f"unknown section {stripped!r}", ln, indent + 1, source)

        if current is None and ":" in stripped:
            label, rest = stripped.split(":", 1)
            label = label.strip()
            if not LABEL.fullmatch(label):
                raise ParseError(f"bad line label {label!r}", ln, indent + 1, source)
            if label in labels:
                raise ParseError(f"duplicate label {label!r}", ln, indent + 1, source)
            toks = list(_tokens(rest, indent + len(stripped) - len(rest)))
            if len(toks) != 3:
                raise ParseError(f"expected 3 coefficients, got {len(toks)}", ln, indent + 1, source)
            coeffs = tuple(_rational(t, ln, c, source) for t, c in toks)
            try:
                line = canonicalize_line(coeffs)
            except DegenerateInput:
                raise ParseError("all coefficients are zero", ln, toks[0][1], source) from None
            if line in rows:
                other = labels[rows.index(line)]
                raise ParseError(f"{label} is the same line as {other}", ln, indent + 1, source)
            labels.append(label)
            rows.append(line)
            where.append(ln)
            continue

        if "=" not in stripped:
            raise ParseError(f"cannot parse {stripped!r}", ln, indent + 1, source)
        key, val = (s.strip() for s in stripped.split("=", 1))
        vcol = indent + stripped.index(val, stripped.index("=")) + 1 if val else indent + len(stripped) + 1
        if current is None:
            if key != "name":
                raise ParseError(f"unknown setting {key!r}", ln, indent + 1, source)
            name = val
            continue
        if key not in labels:
            raise ParseError(f"unknown line label {key!r}", ln, indent + 1, source)
        if key in raw_systems[current]:
            raise ParseError(f"class of {key} given twice", ln, indent + 1, source)
        raw_systems[current][key] = (_rational(val, ln, vcol, source), ln)

    if len(rows) < 2:
        raise ParseError("an arrangement needs at least 2 lines", max(1, len(text.splitlines())), 1, source)
    try:
        arr = Arrangement(tuple(rows), name=name, labels=tuple(labels))
    except ArrangementError as exc:
        raise ParseError(str(exc), where[0], 1, source) from None

    systems: Dict[str, LocalSystem] = {}
    for sname, vals in raw_systems.items():
        classes = [Fraction(0)] * len(rows)
        for label, (v, _) in vals.items():
            classes[labels.index(label)] = v % 1
        if sum(classes).denominator != 1:
            raise ParseError(f"classes of system {sname!r} sum to {sum(classes)} mod 1, "
                             "not an integer", sys_origin[sname], 1, source)
        systems[sname] = LocalSystem(tuple(classes))
    return ArrangementFile(arr, systems)


def parse_arrangement(path: Union[str, Path]) -> ArrangementFile:
    path = Path(path)
    return parse_text(path.read_text(encoding="utf-8"), source=str(path))


def format_arrangement(arr: Arrangement, systems: Optional[Dict[str, LocalSystem]] = None) -> str:
    out = []
    if arr.name:
        out.append(f"name = {arr.name}")
    for label, line in zip(arr.labels, arr.lines):
        out.append(f"{label}: " + " ".join(str(c) for c in line.coeffs))
    for sname, ls in (systems or {}).items():
        out.append("")
        out.append(f"[system {sname}]")
        for label, c in zip(arr.labels, ls.classes):
            if c:
                out.append(f"{label} = {c}")
    return "\n".join(out) + "\n"
