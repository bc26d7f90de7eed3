"""Token-wise text comparison that forgives small numeric differences.

Two numbers ``a`` and ``b`` are equal when ``|a-b| <= A`` or
``|a-b| <= R * min(|a|, |b|)``. Everything that is not a number must match
character for character.
"""

from __future__ import annotations

import argparse
import math
import re
import sys
from dataclasses import dataclass, field
from enum import Enum

NUMBER_RE = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")
_TOKEN_RE = re.compile(r"\S+")


@dataclass(frozen=True)
class Token:
    raw: str
    line: int
    column: int
    value: float | None = None

    @property
    def is_number(self) -> bool:
        return self.value is not None


@dataclass(frozen=True)
class Tolerance:
    absolute: float = 0.0
    relative: float = 0.0

    def __post_init__(self):
        for name in ("absolute", "relative"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v >= 0):
                raise ValueError(f"{name} tolerance must be finite and non-negative, got {v!r}")


class Reason(str, Enum):
    VALUE = "ValueMismatch"
    WORD = "WordMismatch"
    TOKEN_COUNT = "TokenCountMismatch"


@dataclass(frozen=True)
class Mismatch:
    reference: Token | None
    candidate: Token | None
    reason: Reason

    @property
    def line(self) -> int:
        tok = self.reference if self.reference is not None else self.candidate
        return tok.line

    def describe(self) -> str:
        ref = self.reference.raw if self.reference is not None else "<end of input>"
        out = self.candidate.raw if self.candidate is not None else "<end of input>"
        return f"line {self.line}: expected '{ref}' got '{out}'"


@dataclass
class ComparisonReport:
    mismatches: list[Mismatch] = field(default_factory=list)

    @property
    def equal(self) -> bool:
        return not self.mismatches

    def __bool__(self) -> bool:
        return self.equal

    def format(self) -> str:
        lines = [m.describe() for m in self.mismatches]
        lines.append(f"{len(self.mismatches)} differences")
        return "\n".join(lines) + "\n"


def tokenize(text: str) -> list[Token]:
    """Split on whitespace; tokens wholly matching the number grammar carry a value."""
    tokens = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        for m in _TOKEN_RE.finditer(line):
            raw = m.group()
            value = float(raw) if NUMBER_RE.fullmatch(raw) else None
            tokens.append(Token(raw, lineno, m.start() + 1, value))
    return tokens


def numbers_equal(a: float, b: float, tol: Tolerance) -> bool:
    if math.isnan(a) or math.isnan(b):
        return False
    if math.isinf(a) or math.isinf(b):
        return a == b
    diff = abs(a - b)
    return diff <= tol.absolute or diff <= tol.relative * min(abs(a), abs(b))


def compare(reference: str, candidate: str, tol: Tolerance) -> ComparisonReport:
    ref_tokens = tokenize(reference)
    out_tokens = tokenize(candidate)
    report = ComparisonReport()
    for r, o in zip(ref_tokens, out_tokens):
        if r.is_number and o.is_number:
            if not numbers_equal(r.value, o.value, tol):
                report.mismatches.append(Mismatch(r, o, Reason.VALUE))
        elif r.raw != o.raw:
            report.mismatches.append(Mismatch(r, o, Reason.WORD))
    n = min(len(ref_tokens), len(out_tokens))
    if len(ref_tokens) != len(out_tokens):
        r = ref_tokens[n] if n < len(ref_tokens) else None
        o = out_tokens[n] if n < len(out_tokens) else None
        report.mismatches.append(Mismatch(r, o, Reason.TOKEN_COUNT))
    return report


def add_tolerance_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-a", "--absolute", type=float, default=0.0, metavar="ABS",
                        help="absolute tolerance (default 0: exact)")
    parser.add_argument("-r", "--relative", type=float, default=0.0, metavar="REL",
                        help="relative tolerance (default 0: exact)")


def run(reference_path: str, candidate_path: str, tol: Tolerance, stdout=None, stderr=None) -> int:
    """Compare two files and print the mismatches; returns 0, 1 or 2 like diff."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        with open(reference_path, encoding="utf-8") as fh:
            reference = fh.read()
        with open(candidate_path, encoding="utf-8") as fh:
            candidate = fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        print(f"numdiff: {exc}", file=stderr)
        return 2
    report = compare(reference, candidate, tol)
    if report.equal:
        return 0
    stdout.write(report.format())
    return 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="numdiff", description=__doc__.splitlines()[0])
    add_tolerance_arguments(parser)
    parser.add_argument("reference")
    parser.add_argument("candidate")
    args = parser.parse_args(argv)
    try:
        tol = Tolerance(args.absolute, args.relative)
    except ValueError as exc:
        parser.error(str(exc))
    return run(args.reference, args.candidate, tol)


if __name__ == "__main__":
    sys.exit(main())
