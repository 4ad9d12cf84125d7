"""Trial execution and result persistence.

The engine never trains anything itself.  Each plan row is handed to an
external runner process which receives one JSON object on stdin,

    {"row": 3, "factors": {"learning_rate": "0.001", ...}}

and must print one JSON object with the four metrics on stdout,

    {"ta": 0.97, "va": 0.88, "tl": 0.08, "vl": 0.31}

Everything else the runner writes is logged verbatim.  Results live in an
append-only JSON-lines log, one record per line, fsynced per record; the
newest record per row wins on replay.
"""
from __future__ import annotations

import dataclasses
import hashlib
import json
import logging
import os
import shlex
import subprocess
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Sequence

from .design import DesignMatrix
from .errors import StoreError
from .response import TrialMetrics

log = logging.getLogger(__name__)

METRIC_KEYS = ("ta", "va", "tl", "vl")

#: Overrides the working directory the runner process is spawned in.
RUNNER_CWD_VAR = "TAGUCHI_RUNNER_CWD"


def plan_fingerprint(matrix: DesignMatrix) -> str:
    """Stable hash of a plan's factors, labels and level assignments."""
    doc = {
        "factors": [
            {"name": f.name, "levels": list(f.levels)}
            for f in matrix.factor_space
        ],
        "rows": [list(row) for row in matrix.assignments],
    }
    payload = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def _utcnow() -> str:
    return datetime.now(timezone.utc).isoformat()


@dataclass(frozen=True)
class RunRecord:
    """Outcome of one plan row: metric replicates on success, else a note."""

    plan: str
    row_index: int
    level_labels: dict[str, str]
    metrics: tuple[TrialMetrics, ...] | None
    failure: str | None
    started: str
    finished: str
    runner_exit: int

    def __post_init__(self) -> None:
        if (self.metrics is None) == (self.failure is None):
            raise StoreError(
                f"row {self.row_index}: a record carries either metrics or "
                "a failure note, never both or neither"
            )
        if self.metrics is not None:
            object.__setattr__(self, "metrics", tuple(self.metrics))

    @property
    def ok(self) -> bool:
        return self.metrics is not None

    def content_key(self) -> tuple:
        """Record identity for idempotent re-ingestion; timestamps excluded."""
        metrics = (
            tuple(dataclasses.astuple(m) for m in self.metrics)
            if self.metrics
            else None
        )
        return (
            self.plan,
            self.row_index,
            tuple(sorted(self.level_labels.items())),
            metrics,
            self.failure,
            self.runner_exit,
        )

    def to_json(self) -> str:
        doc = {
            "plan": self.plan,
            "row": self.row_index,
            "levels": self.level_labels,
            "metrics": [dataclasses.asdict(m) for m in self.metrics]
            if self.metrics
            else None,
            "failure": self.failure,
            "started": self.started,
            "finished": self.finished,
            "exit": self.runner_exit,
        }
        return json.dumps(doc, ensure_ascii=False, sort_keys=True)

    @classmethod
    def from_json(cls, line: str) -> "RunRecord":
        try:
            doc = json.loads(line)
            metrics = (
                tuple(TrialMetrics(**m) for m in doc["metrics"])
                if doc["metrics"] is not None
                else None
            )
            return cls(
                plan=doc["plan"],
                row_index=int(doc["row"]),
                level_labels=dict(doc["levels"]),
                metrics=metrics,
                failure=doc["failure"],
                started=doc["started"],
                finished=doc["finished"],
                runner_exit=int(doc["exit"]),
            )
        except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
            raise StoreError(f"corrupt run-log line: {exc}") from exc


class ResultStore:
    """Run records for one plan, keyed by row; the newest record wins.

    Bound to a path, every accepted record is appended to the JSON-lines
    log and fsynced before ``add`` returns.  Re-adding a record whose
    content matches the current newest for its row is a no-op.
    """

    def __init__(self, plan: str, path: Path | str | None = None):
        self.plan = plan
        self.path = Path(path) if path is not None else None
        self._history: dict[int, list[RunRecord]] = {}
        self.diagnostics: list[str] = []
        self._lock = threading.Lock()

    def add(self, record: RunRecord) -> bool:
        """Accept a record; returns False when it was an idempotent replay."""
        if record.plan != self.plan:
            raise StoreError(
                f"record for plan {record.plan[:12]}... rejected: store is "
                f"bound to plan {self.plan[:12]}..."
            )
        with self._lock:
            history = self._history.setdefault(record.row_index, [])
            if history and history[-1].content_key() == record.content_key():
                return False
            if history and history[-1].ok and record.ok:
                log.warning(
                    "row %d: overwriting an earlier result (last write wins)",
                    record.row_index,
                )
            history.append(record)
            if self.path is not None:
                with self.path.open("a", encoding="utf-8") as handle:
                    handle.write(record.to_json() + "\n")
                    handle.flush()
                    os.fsync(handle.fileno())
        return True

    def latest(self) -> dict[int, RunRecord]:
        return {row: hist[-1] for row, hist in sorted(self._history.items())}

    def metrics_by_row(self) -> dict[int, tuple[TrialMetrics, ...]]:
        return {
            row: rec.metrics
            for row, rec in self.latest().items()
            if rec.ok
        }

    def missing_rows(self, runs: int) -> tuple[int, ...]:
        present = {row for row, rec in self.latest().items() if rec.ok}
        return tuple(i for i in range(1, runs + 1) if i not in present)

    def failed_rows(self) -> tuple[int, ...]:
        return tuple(
            row for row, rec in sorted(self.latest().items()) if not rec.ok
        )

    def __len__(self) -> int:
        return len(self._history)

    @classmethod
    def load(
        cls, path: Path | str, plan: str, *, append: bool = True
    ) -> "ResultStore":
        """Replay a JSON-lines log; records for other plans are rejected."""
        path = Path(path)
        store = cls(plan, path=None)
        if path.exists():
            with path.open(encoding="utf-8") as handle:
                for line in handle:
                    if line.strip():
                        store.add(RunRecord.from_json(line))
        if append:
            store.path = path
        return store


# ---------------------------------------------------------------------------
# External trial execution


def _parse_metrics_lines(stdout: str, row_index: int) -> tuple[TrialMetrics | None, str | None]:
    """Pull the metrics object out of runner stdout; extra output is logged."""
    found: TrialMetrics | None = None
    count = 0
    for line in stdout.splitlines():
        line = line.strip()
        if not line:
            continue
        try:
            doc = json.loads(line)
        except json.JSONDecodeError:
            log.info("row %d runner output: %s", row_index, line)
            continue
        if isinstance(doc, dict) and set(doc) == set(METRIC_KEYS):
            count += 1
            try:
                found = TrialMetrics(**{k: float(doc[k]) for k in METRIC_KEYS})
            except (TypeError, ValueError) as exc:
                return None, f"invalid metrics object: {exc}"
        else:
            log.info("row %d runner output: %s", row_index, line)
    if count > 1:
        log.warning(
            "row %d: runner printed %d metrics objects, keeping the last",
            row_index,
            count,
        )
    if found is None:
        return None, "runner printed no metrics object on stdout"
    return found, None


def _run_one(
    matrix: DesignMatrix,
    plan: str,
    row_index: int,
    argv: Sequence[str],
    timeout: float | None,
) -> RunRecord:
    labels = matrix.row_labels(row_index)
    payload = json.dumps({"row": row_index, "factors": labels})
    started = _utcnow()
    cwd = os.environ.get(RUNNER_CWD_VAR) or None
    try:
        proc = subprocess.run(
            list(argv),
            input=payload,
            capture_output=True,
            text=True,
            timeout=timeout,
            cwd=cwd,
        )
    except (OSError, subprocess.TimeoutExpired) as exc:
        return RunRecord(
            plan=plan,
            row_index=row_index,
            level_labels=labels,
            metrics=None,
            failure=f"runner did not complete: {exc}",
            started=started,
            finished=_utcnow(),
            runner_exit=-1,
        )
    if proc.stderr:
        for line in proc.stderr.splitlines():
            log.info("row %d runner stderr: %s", row_index, line)
    if proc.returncode != 0:
        return RunRecord(
            plan=plan,
            row_index=row_index,
            level_labels=labels,
            metrics=None,
            failure=f"runner exited with status {proc.returncode}",
            started=started,
            finished=_utcnow(),
            runner_exit=proc.returncode,
        )
    metrics, problem = _parse_metrics_lines(proc.stdout, row_index)
    if metrics is None:
        return RunRecord(
            plan=plan,
            row_index=row_index,
            level_labels=labels,
            metrics=None,
            failure=problem,
            started=started,
            finished=_utcnow(),
            runner_exit=proc.returncode,
        )
    return RunRecord(
        plan=plan,
        row_index=row_index,
        level_labels=labels,
        metrics=(metrics,),
        failure=None,
        started=started,
        finished=_utcnow(),
        runner_exit=proc.returncode,
    )


def run_plan(
    matrix: DesignMatrix,
    runner_command: str | Sequence[str],
    parallelism: int = 1,
    *,
    store_path: Path | str | None = None,
    timeout: float | None = None,
) -> ResultStore:
    """Execute every plan row through the runner, up to ``parallelism`` at
    a time.

    A failing row is recorded and the run continues; analysis will refuse
    the store until the row is re-run or excluded explicitly.  Timeout
    defaults to unlimited because training time is unknown to the engine.
    """
    if parallelism < 1:
        raise ValueError(f"parallelism must be positive, got {parallelism}")
    argv = (
        shlex.split(runner_command)
        if isinstance(runner_command, str)
        else list(runner_command)
    )
    if not argv:
        raise ValueError("runner command must be nonempty")
    plan = plan_fingerprint(matrix)
    store = ResultStore(plan, path=store_path)
    rows = range(1, matrix.runs + 1)
    with ThreadPoolExecutor(max_workers=parallelism) as pool:
        for record in pool.map(
            lambda i: _run_one(matrix, plan, i, argv, timeout), rows
        ):
            store.add(record)
    return store


# ---------------------------------------------------------------------------
# Manual ingestion of externally produced results

RESULTS_HEADER = ("exp", "ta", "va", "tl", "vl")


def ingest_results(
    matrix: DesignMatrix,
    document: str | Path,
    *,
    store_path: Path | str | None = None,
) -> ResultStore:
    """Populate a store from a results CSV with header ``exp,ta,va,tl,vl``.

    Invalid rows (unknown index, non-numeric field, out-of-range metric)
    are rejected individually with a diagnostic; the rest are stored.
    Repeated ``exp`` values become replicates of the same plan row.
    """
    if isinstance(document, Path):
        text = document.read_text(encoding="utf-8")
    else:
        text = str(document)
        try:
            candidate = Path(text)
            if len(text) < 4096 and candidate.is_file():
                text = candidate.read_text(encoding="utf-8")
        except (OSError, ValueError):
            pass

    plan = plan_fingerprint(matrix)
    store = ResultStore(plan, path=store_path)

    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        return store
    header = tuple(h.strip() for h in lines[0].split(","))
    if header != RESULTS_HEADER:
        raise StoreError(
            f"results header must be {','.join(RESULTS_HEADER)!r}, "
            f"got {lines[0]!r}"
        )

    replicates: dict[int, list[TrialMetrics]] = {}
    for lineno, line in enumerate(lines[1:], start=2):
        cells = [c.strip() for c in line.split(",")]
        if len(cells) != len(RESULTS_HEADER):
            store.diagnostics.append(
                f"line {lineno}: expected {len(RESULTS_HEADER)} fields, "
                f"got {len(cells)}"
            )
            continue
        try:
            exp = int(cells[0])
        except ValueError:
            store.diagnostics.append(
                f"line {lineno}: exp index {cells[0]!r} is not an integer"
            )
            continue
        if not 1 <= exp <= matrix.runs:
            store.diagnostics.append(
                f"line {lineno}: exp {exp} outside plan rows 1..{matrix.runs}"
            )
            continue
        values = {}
        bad = None
        for name, cell in zip(RESULTS_HEADER[1:], cells[1:]):
            try:
                values[name] = float(cell)
            except ValueError:
                bad = f"line {lineno}: field {name!r} value {cell!r} is not numeric"
                break
        if bad:
            store.diagnostics.append(bad)
            continue
        try:
            metrics = TrialMetrics(**values)
        except ValueError as exc:
            store.diagnostics.append(f"line {lineno}: exp {exp}: {exc}")
            continue
        replicates.setdefault(exp, []).append(metrics)

    now = _utcnow()
    for exp in sorted(replicates):
        store.add(
            RunRecord(
                plan=plan,
                row_index=exp,
                level_labels=matrix.row_labels(exp),
                metrics=tuple(replicates[exp]),
                failure=None,
                started=now,
                finished=now,
                runner_exit=0,
            )
        )
    return store
