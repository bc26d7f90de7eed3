"""Golden-file regression runs over a directory of ``*.json`` / ``*.reference`` pairs."""

from __future__ import annotations

import enum
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from springkit import numdiff, pipeline
from springkit.ode import IntegrationError
from springkit.scenario import ScenarioError

REFERENCE_SUFFIX = ".reference"


class Status(enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    MISSING_REFERENCE = "missing reference"
    RUN_ERROR = "run error"


@dataclass(frozen=True)
class TestCase:
    __test__ = False  # keep pytest from collecting this

    name: str
    input_path: Path
    reference_path: Path

    @classmethod
    def from_input(cls, path: Path) -> "TestCase":
        path = Path(path)
        return cls(path.name, path, path.with_suffix(REFERENCE_SUFFIX))


@dataclass(frozen=True)
class TestResult:
    __test__ = False

    name: str
    status: Status
    detail: numdiff.ComparisonReport | str | None = None

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS

    def diagnostic(self) -> str:
        head = f"{self.name}: {self.status.value}"
        if isinstance(self.detail, numdiff.ComparisonReport):
            body = self.detail.format()
        elif self.detail:
            body = self.detail + "\n"
        else:
            body = ""
        return head + "\n" + "".join("  " + ln + "\n" for ln in body.splitlines())


def discover(directory) -> list[TestCase]:
    directory = Path(directory)
    if not directory.is_dir():
        raise NotADirectoryError(f"not a directory: {directory}")
    inputs = [p for p in directory.iterdir() if p.suffix == ".json" and p.is_file()]
    return [TestCase.from_input(p) for p in sorted(inputs, key=lambda p: p.name)]


def _simulate(tc: TestCase) -> str:
    return pipeline.simulate(tc.input_path.read_text(encoding="utf-8"))[0]


def run_test(tc: TestCase, tol: numdiff.Tolerance) -> TestResult:
    if not tc.reference_path.is_file():
        return TestResult(tc.name, Status.MISSING_REFERENCE,
                          f"no reference file {tc.reference_path.name}")
    try:
        output = _simulate(tc)
        reference = tc.reference_path.read_text(encoding="utf-8")
    except (ScenarioError, IntegrationError, ValueError, OSError, UnicodeDecodeError) as exc:
        return TestResult(tc.name, Status.RUN_ERROR, f"{type(exc).__name__}: {exc}")
    report = numdiff.compare(reference, output, tol)
    if report.equal:
        return TestResult(tc.name, Status.PASS)
    return TestResult(tc.name, Status.FAIL, report)


def _run_test_args(args):
    return run_test(*args)


def run_tests(cases: list[TestCase], tol: numdiff.Tolerance, jobs: int = 1) -> list[TestResult]:
    """Results come back in the order of ``cases`` whatever ``jobs`` is."""
    if jobs <= 1 or len(cases) <= 1:
        return [run_test(tc, tol) for tc in cases]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_test_args, [(tc, tol) for tc in cases]))


def format_report(results: list[TestResult]) -> str:
    out = io.StringIO()
    for res in results:
        out.write(f" {'.' if res.passed else 'X'}    {res.name}\n")
    failures = [res for res in results if not res.passed]
    if failures:
        out.write("\n")
        for res in failures:
            out.write(res.diagnostic())
    return out.getvalue()


def run_all(directory, tol: numdiff.Tolerance, jobs: int = 1) -> tuple[str, int]:
    try:
        cases = discover(directory)
    except OSError as exc:
        return f"error: {exc}\n", 2
    results = run_tests(cases, tol, jobs)
    code = 0 if all(res.passed for res in results) else 1
    return format_report(results), code


def bless(directory, names: list[str] | None = None) -> tuple[str, int]:
    """Overwrite references with the current simulator output."""
    try:
        cases = discover(directory)
    except OSError as exc:
        return f"error: {exc}\n", 2
    if names:
        by_name = {tc.name: tc for tc in cases}
        unknown = [n for n in names if n not in by_name]
        if unknown:
            return f"error: no such test: {', '.join(unknown)}\n", 2
        cases = [by_name[n] for n in names]
    lines = []
    code = 0
    for tc in cases:
        try:
            output = _simulate(tc)
        except (ScenarioError, IntegrationError, ValueError, OSError) as exc:
            lines.append(f"error {tc.name}: {exc}")
            code = 1
            continue
        tc.reference_path.write_text(output, encoding="utf-8")
        lines.append(f"updated {tc.reference_path.name}")
    return "".join(ln + "\n" for ln in lines), code


def text_distance(a: str, b: str) -> float:
    """Line edit distance normalised by the longer line count; 0 for two empty texts."""
    la, lb = a.splitlines(), b.splitlines()
    longest = max(len(la), len(lb))
    if longest == 0:
        return 0.0
    prev = list(range(len(lb) + 1))
    for i, line_a in enumerate(la, start=1):
        cur = [i] + [0] * len(lb)
        for j, line_b in enumerate(lb, start=1):
            cur[j] = min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (line_a != line_b))
        prev = cur
    return prev[-1] / longest


@dataclass
class LineageGraph:
    nodes: list[str]
    distances: np.ndarray
    edges: list[tuple[int, int, float]]

    def to_dot(self) -> str:
        quoted = ['"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"' for name in self.nodes]
        lines = ["graph lineage {"]
        for q in quoted:
            lines.append(f"  {q};")
        for i, j, w in self.edges:
            lines.append(f'  {quoted[i]} -- {quoted[j]} [label="{w:.3f}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def matrix_csv(self) -> str:
        rows = ["," + ",".join(self.nodes)]
        for name, row in zip(self.nodes, self.distances):
            rows.append(name + "," + ",".join(f"{d:.6f}" for d in row))
        return "\n".join(rows) + "\n"


def minimum_spanning_tree(nodes: list[str], distances: np.ndarray) -> list[tuple[int, int, float]]:
    """Kruskal; equal weights are taken in lexicographic order of the node-name pair."""
    candidates = []
    for i in range(len(nodes)):
        for j in range(i + 1, len(nodes)):
            a, b = sorted((i, j), key=lambda k: nodes[k])
            candidates.append((distances[i, j], nodes[a], nodes[b], a, b))
    candidates.sort()

    parent = list(range(len(nodes)))

    def root(k):
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    edges = []
    for w, _, _, a, b in candidates:
        ra, rb = root(a), root(b)
        if ra != rb:
            parent[ra] = rb
            edges.append((a, b, float(w)))
    return edges


def lineage_graph(directory) -> LineageGraph:
    cases = discover(directory)
    if not cases:
        raise ValueError(f"no tests found in {directory}")
    texts = [tc.input_path.read_text(encoding="utf-8") for tc in cases]
    n = len(cases)
    dist = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            dist[i, j] = dist[j, i] = text_distance(texts[i], texts[j])
    names = [tc.name for tc in cases]
    return LineageGraph(names, dist, minimum_spanning_tree(names, dist))
