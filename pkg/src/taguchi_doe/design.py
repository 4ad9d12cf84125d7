"""Two-level orthogonal-array experiment plans.

The engine ships a single hard-coded 12-run array for up to 11 two-level
factors.  Every pair of columns contains each of the four level combinations
exactly three times (strength 2), so main effects are estimated free of
mutual confounding.
"""
from __future__ import annotations

import csv
import io
import itertools
import json
from dataclasses import dataclass, field

from .errors import CapacityError, ConfigError, PlanFormatError

L12_RUNS = 12
L12_CAPACITY = 11

# Canonical 12-run, 11-column assignment grid.  Columns 9..11 are the unique
# (up to level relabeling) completion of the first eight columns to a full
# strength-2 array; the completion was found by exhaustive search over all
# balanced columns and is frozen here.
_L12_GRID: tuple[tuple[int, ...], ...] = (
    (1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1),
    (1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2),
    (1, 1, 2, 2, 2, 1, 1, 1, 2, 2, 2),
    (1, 2, 1, 2, 2, 1, 2, 2, 1, 1, 2),
    (1, 2, 2, 1, 2, 2, 1, 2, 1, 2, 1),
    (1, 2, 2, 2, 1, 2, 2, 1, 2, 1, 1),
    (2, 1, 2, 2, 1, 1, 2, 2, 1, 2, 1),
    (2, 1, 2, 1, 2, 2, 2, 1, 1, 1, 2),
    (2, 1, 1, 2, 2, 2, 1, 2, 2, 1, 1),
    (2, 2, 2, 1, 1, 1, 1, 2, 2, 1, 2),
    (2, 2, 1, 2, 1, 2, 1, 1, 1, 2, 2),
    (2, 2, 1, 1, 2, 1, 2, 1, 2, 2, 1),
)


@dataclass(frozen=True)
class Factor:
    """A named two-level factor; level order fixes the column coding."""

    name: str
    level_one: str
    level_two: str

    def __post_init__(self) -> None:
        if not self.name:
            raise ConfigError("factor name must be nonempty")
        if self.level_one == self.level_two:
            raise ConfigError(
                f"factor {self.name!r}: the two levels must differ"
            )

    @property
    def levels(self) -> tuple[str, str]:
        return (self.level_one, self.level_two)

    def label(self, index: int) -> str:
        """Label for level index 1 or 2."""
        if index not in (1, 2):
            raise ValueError(f"level index must be 1 or 2, got {index}")
        return self.level_one if index == 1 else self.level_two

    def index_of(self, label: str) -> int:
        if label == self.level_one:
            return 1
        if label == self.level_two:
            return 2
        raise PlanFormatError(
            f"label {label!r} is not a level of factor {self.name!r}"
        )


@dataclass(frozen=True)
class FactorSpace:
    """Ordered collection of factors bound to array columns positionally."""

    factors: tuple[Factor, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "factors", tuple(self.factors))
        names = [f.name for f in self.factors]
        if len(set(names)) != len(names):
            raise ConfigError(f"duplicate factor names in {names}")

    @classmethod
    def from_pairs(cls, pairs) -> "FactorSpace":
        """Build from (name, (level_one, level_two)) pairs."""
        return cls(tuple(Factor(n, l1, l2) for n, (l1, l2) in pairs))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(f.name for f in self.factors)

    def __len__(self) -> int:
        return len(self.factors)

    def __iter__(self):
        return iter(self.factors)

    def __getitem__(self, key: int | str) -> Factor:
        if isinstance(key, str):
            for f in self.factors:
                if f.name == key:
                    return f
            raise KeyError(key)
        return self.factors[key]

    def position(self, name: str) -> int:
        for i, f in enumerate(self.factors):
            if f.name == name:
                return i
        raise KeyError(name)


@dataclass(frozen=True)
class DesignMatrix:
    """Run-by-factor grid of level indices (1 or 2), plus its factor space."""

    runs: int
    assignments: tuple[tuple[int, ...], ...]
    factor_space: FactorSpace

    def level(self, row_index: int, factor: int | str) -> int:
        """Level index at a 1-based run for a factor (position or name)."""
        col = (
            self.factor_space.position(factor)
            if isinstance(factor, str)
            else factor
        )
        return self.assignments[row_index - 1][col]

    def column(self, factor: int | str) -> tuple[int, ...]:
        col = (
            self.factor_space.position(factor)
            if isinstance(factor, str)
            else factor
        )
        return tuple(row[col] for row in self.assignments)

    def row_labels(self, row_index: int) -> dict[str, str]:
        """Factor-name to level-label mapping for a 1-based run."""
        row = self.assignments[row_index - 1]
        return {
            f.name: f.label(level)
            for f, level in zip(self.factor_space.factors, row)
        }


def build_l12(space: FactorSpace) -> DesignMatrix:
    """Bind factors, in order, to the first columns of the canonical array.

    Column assignment is positional and stable: binding fewer factors never
    changes the pattern of the columns already bound.
    """
    k = len(space)
    if not 1 <= k <= L12_CAPACITY:
        raise CapacityError(
            f"the 12-run array holds 1 to {L12_CAPACITY} two-level factors, "
            f"got {k}"
        )
    assignments = tuple(row[:k] for row in _L12_GRID)
    return DesignMatrix(runs=L12_RUNS, assignments=assignments, factor_space=space)


@dataclass(frozen=True)
class ValidationReport:
    """Balance and pairwise-combination counts with any violations found."""

    column_counts: dict[str, dict[int, int]]
    pair_counts: dict[tuple[str, str], dict[tuple[int, int], int]]
    violations: tuple[str, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return not self.violations


def validate_orthogonality(matrix: DesignMatrix) -> ValidationReport:
    """Exhaustively count level occurrences per column and per column pair.

    Failures are reported, not raised, so a report can describe a broken
    plan in full.
    """
    names = matrix.factor_space.names
    n = matrix.runs
    violations: list[str] = []

    column_counts: dict[str, dict[int, int]] = {}
    for name in names:
        col = matrix.column(name)
        counts = {1: col.count(1), 2: col.count(2)}
        column_counts[name] = counts
        if counts[1] != n // 2 or counts[2] != n // 2:
            violations.append(
                f"column {name!r} unbalanced: level counts {counts}"
            )

    pair_counts: dict[tuple[str, str], dict[tuple[int, int], int]] = {}
    expected = n // 4
    for a, b in itertools.combinations(names, 2):
        col_a, col_b = matrix.column(a), matrix.column(b)
        counts = {combo: 0 for combo in itertools.product((1, 2), (1, 2))}
        for la, lb in zip(col_a, col_b):
            counts[(la, lb)] += 1
        pair_counts[(a, b)] = counts
        bad = {c: v for c, v in counts.items() if v != expected}
        if bad:
            violations.append(
                f"pair ({a!r}, {b!r}) not strength-2: "
                f"combination counts {bad} (expected {expected} each)"
            )

    return ValidationReport(
        column_counts=column_counts,
        pair_counts=pair_counts,
        violations=tuple(violations),
    )


PLAN_FORMATS = ("csv", "json")


def export_plan(matrix: DesignMatrix, fmt: str = "csv") -> str:
    """Serialize a plan; round-trips losslessly through import_plan."""
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(matrix.factor_space.names)
        for i in range(1, matrix.runs + 1):
            labels = matrix.row_labels(i)
            writer.writerow([labels[n] for n in matrix.factor_space.names])
        return buf.getvalue()
    if fmt == "json":
        doc = {
            "factors": [
                {"name": f.name, "levels": list(f.levels)}
                for f in matrix.factor_space
            ],
            "rows": [list(row) for row in matrix.assignments],
        }
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    raise PlanFormatError(f"unknown plan format {fmt!r}; use one of {PLAN_FORMATS}")


def import_plan(text: str, fmt: str = "csv") -> DesignMatrix:
    """Parse a plan document produced by export_plan.

    CSV carries labels only, so level-one is taken to be each column's label
    in the first run; plans built here satisfy that convention (run 1 sits at
    level one everywhere).  JSON carries explicit level indices.
    """
    if fmt == "csv":
        rows = list(csv.reader(io.StringIO(text)))
        rows = [r for r in rows if r]
        if len(rows) < 2:
            raise PlanFormatError("plan CSV needs a header and at least one run")
        names, label_rows = rows[0], rows[1:]
        factors = []
        for j, name in enumerate(names):
            column = [r[j] for r in label_rows]
            level_one = column[0]
            others = sorted(set(column) - {level_one})
            if len(others) != 1:
                raise PlanFormatError(
                    f"column {name!r} must contain exactly two distinct labels"
                )
            factors.append(Factor(name, level_one, others[0]))
        space = FactorSpace(tuple(factors))
        assignments = tuple(
            tuple(space[j].index_of(r[j]) for j in range(len(names)))
            for r in label_rows
        )
        return DesignMatrix(len(label_rows), assignments, space)
    if fmt == "json":
        try:
            doc = json.loads(text)
            factors = tuple(
                Factor(f["name"], f["levels"][0], f["levels"][1])
                for f in doc["factors"]
            )
            assignments = tuple(tuple(int(v) for v in row) for row in doc["rows"])
        except (KeyError, IndexError, TypeError, json.JSONDecodeError) as exc:
            raise PlanFormatError(f"malformed plan JSON: {exc}") from exc
        if any(v not in (1, 2) for row in assignments for v in row):
            raise PlanFormatError("plan JSON level indices must be 1 or 2")
        return DesignMatrix(len(assignments), assignments, FactorSpace(factors))
    raise PlanFormatError(f"unknown plan format {fmt!r}; use one of {PLAN_FORMATS}")
