"""Project configuration: a flat, sectioned key/value file.

Grammar (documented in full in the README):

    [section]            section header
    key = value          assignment; keys are bare identifiers
    # ...                comment, full-line or trailing
    value forms          "quoted string" | true/false | number |
                         comma-separated list of the above | bare string

Sections: ``[factors]`` lists each factor as ``name = level1, level2`` in
column-binding order; ``[analysis]`` holds approach selection and transform
knobs; ``[run]`` the runner command and parallelism; ``[output]`` the
artifact directory.
"""
from __future__ import annotations

import shlex
from dataclasses import dataclass, field
from pathlib import Path

from .design import FactorSpace
from .errors import ConfigError
from .response import Approach, DEFAULT_LOG_BASE, WEIGHT_COUNTS

ALL_APPROACHES = (1, 2, 3, 4, 5)


@dataclass
class ProjectConfig:
    space: FactorSpace
    approaches: tuple[int, ...] = ALL_APPROACHES
    log_base: float = DEFAULT_LOG_BASE
    weights: dict[int, tuple[float, ...]] = field(default_factory=dict)
    runner_command: str | None = None
    parallelism: int = 1
    timeout: float | None = None
    output_dir: Path = Path("taguchi-out")

    def __post_init__(self) -> None:
        if not 0.0 < self.log_base < 1.0:
            raise ConfigError(
                f"log_base must lie strictly inside (0, 1), got {self.log_base}"
            )
        if self.parallelism < 1:
            raise ConfigError(
                f"parallelism must be positive, got {self.parallelism}"
            )
        for k, w in self.weights.items():
            if k not in WEIGHT_COUNTS:
                raise ConfigError(f"approach {k} takes no weights")
            if len(w) != WEIGHT_COUNTS[k]:
                raise ConfigError(
                    f"approach {k} takes {WEIGHT_COUNTS[k]} weights, got {len(w)}"
                )
            if abs(sum(w) - 1.0) > 1e-9:
                raise ConfigError(
                    f"approach {k} weights must sum to 1, got {sum(w)!r}"
                )
        bad = [k for k in self.approaches if k not in ALL_APPROACHES]
        if bad:
            raise ConfigError(f"unknown approach ids {bad}")

    def approach(self, k: int) -> Approach:
        return Approach(id=k, log_base=self.log_base, weights=self.weights.get(k))

    @property
    def store_path(self) -> Path:
        return self.output_dir / "runs.jsonl"


def _coerce_scalar(token: str):
    if len(token) >= 2 and token[0] == token[-1] == '"':
        return token[1:-1]
    low = token.lower()
    if low == "true":
        return True
    if low == "false":
        return False
    try:
        return int(token)
    except ValueError:
        pass
    try:
        return float(token)
    except ValueError:
        pass
    return token


def _parse_value(raw: str):
    if "," in raw:
        return [_coerce_scalar(part.strip()) for part in raw.split(",")]
    return _coerce_scalar(raw.strip())


def parse_config_text(text: str) -> dict[str, dict[str, object]]:
    """Parse the raw document into {section: {key: value}} preserving order."""
    sections: dict[str, dict[str, object]] = {}
    current: dict[str, object] | None = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if stripped.startswith("[") and stripped.endswith("]"):
            name = stripped[1:-1].strip()
            if not name:
                raise ConfigError(f"line {lineno}: empty section header")
            current = sections.setdefault(name, {})
            continue
        if "=" not in stripped:
            raise ConfigError(
                f"line {lineno}: expected 'key = value', got {stripped!r}"
            )
        if current is None:
            raise ConfigError(
                f"line {lineno}: assignment before any [section] header"
            )
        key, raw = stripped.split("=", 1)
        # strip trailing comments outside quotes
        if "#" in raw and '"' not in raw:
            raw = raw.split("#", 1)[0]
        current[key.strip()] = _parse_value(raw)
    return sections


def _as_label(value) -> str:
    if isinstance(value, bool):
        return "True" if value else "False"
    return str(value)


def config_from_sections(sections: dict[str, dict[str, object]]) -> ProjectConfig:
    factors = sections.get("factors")
    if not factors:
        raise ConfigError("config needs a [factors] section with at least one factor")
    pairs = []
    for name, levels in factors.items():
        if not isinstance(levels, list) or len(levels) != 2:
            raise ConfigError(
                f"factor {name!r} must list exactly two levels, got {levels!r}"
            )
        pairs.append((name, (_as_label(levels[0]), _as_label(levels[1]))))
    space = FactorSpace.from_pairs(pairs)

    analysis = sections.get("analysis", {})
    selection = analysis.get("approaches", "all")
    if selection == "all":
        approaches = ALL_APPROACHES
    else:
        items = selection if isinstance(selection, list) else [selection]
        try:
            approaches = tuple(int(v) for v in items)
        except (TypeError, ValueError):
            raise ConfigError(f"approaches must be 'all' or ids, got {selection!r}")
    log_base = analysis.get("log_base", DEFAULT_LOG_BASE)
    if not isinstance(log_base, (int, float)) or isinstance(log_base, bool):
        raise ConfigError(f"log_base must be numeric, got {log_base!r}")
    weights = {}
    for k in WEIGHT_COUNTS:
        raw = analysis.get(f"weights{k}")
        if raw is None:
            continue
        items = raw if isinstance(raw, list) else [raw]
        try:
            weights[k] = tuple(float(v) for v in items)
        except (TypeError, ValueError):
            raise ConfigError(f"weights{k} must be numeric, got {raw!r}")

    run = sections.get("run", {})
    runner_command = run.get("command")
    if runner_command is not None:
        runner_command = str(runner_command)
        if not shlex.split(runner_command):
            raise ConfigError("runner command must be nonempty")
    parallelism = run.get("parallelism", 1)
    if not isinstance(parallelism, int) or isinstance(parallelism, bool):
        raise ConfigError(f"parallelism must be an integer, got {parallelism!r}")
    timeout = run.get("timeout")
    if timeout is not None and not isinstance(timeout, (int, float)):
        raise ConfigError(f"timeout must be numeric, got {timeout!r}")

    output = sections.get("output", {})
    out_dir = Path(str(output.get("directory", "taguchi-out")))

    return ProjectConfig(
        space=space,
        approaches=approaches,
        log_base=float(log_base),
        weights=weights,
        runner_command=runner_command,
        parallelism=parallelism,
        timeout=float(timeout) if timeout is not None else None,
        output_dir=out_dir,
    )


def load_config(path: str | Path) -> ProjectConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return config_from_sections(parse_config_text(text))


def default_config() -> ProjectConfig:
    """The bundled reference study's factor space with stock settings."""
    from .reference import reference_space

    return ProjectConfig(space=reference_space())
