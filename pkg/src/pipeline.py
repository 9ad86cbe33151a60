from __future__ import annotations

import json
import logging
import os
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

try:  # Python 3.11+
    import tomllib
except ModuleNotFoundError:  # pragma: no cover
    import tomli as tomllib  # type: ignore

from src.components.errors import InputError, PurityError, ThetaNotConcentratedError, UndeterminedError
from src.components.linear import FieldSpec


CONFIG_PATH = Path("config") / "settings.toml"
CONFIG_ENV = "TENSORCOH_CONFIG"
REQUIRED_TABLES = ("bounds", "algebra", "sampling", "output")
TOOL_VERSION = "0.1.0"

logger = logging.getLogger(__name__)


def load_config(config_path: Optional[Path] = None) -> Dict[str, Any]:
    if config_path is None:
        config_path = Path(os.environ.get(CONFIG_ENV, CONFIG_PATH))
    if not config_path.exists():
        raise FileNotFoundError(f"Config file missing at {config_path}")
    with config_path.open("rb") as fh:
        config = tomllib.load(fh)
    missing = [t for t in REQUIRED_TABLES if t not in config]
    if missing:
        raise KeyError(f"settings.toml must include {', '.join(f'[{t}]' for t in REQUIRED_TABLES)}; missing {missing}")
    return config


@dataclass
class CommandRequest:
    command: str
    inputs: List[str] = field(default_factory=list)
    bounds: Dict[str, int] = field(default_factory=dict)
    options: Dict[str, Any] = field(default_factory=dict)
    field_spec: Optional[FieldSpec] = None
    output: Optional[str] = None
    xlsx: Optional[str] = None
    format: str = "text"

    def bound(self, name: str) -> int:
        if name not in self.bounds:
            raise InputError(f"Command {self.command!r} needs the bound {name!r}")
        return self.bounds[name]

    @property
    def field_label(self) -> str:
        return self.field_spec.label if self.field_spec is not None else "Q"

    def input(self, index: int, what: str) -> str:
        if index >= len(self.inputs):
            raise InputError(f"Command {self.command!r} expects {what} as argument {index + 1}")
        return self.inputs[index]


@dataclass
class CommandReport:
    command: str
    verdict: str
    affirmative: bool
    field: str
    bounds: Dict[str, int]
    inputs: List[str]
    result: Dict[str, Any] = field(default_factory=dict)
    tables: Dict[str, List[Dict[str, Any]]] = field(default_factory=dict)
    version: str = TOOL_VERSION

    @property
    def exit_code(self) -> int:
        return 0 if self.affirmative else 1

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(asdict(self), indent=indent, sort_keys=True, default=str)


@dataclass
class CommandOutcome:
    exit_code: int
    report: Optional[CommandReport] = None
    error: Optional[str] = None


def negative_report(request: CommandRequest, verdict: str, result: Dict[str, Any]) -> CommandReport:
    return CommandReport(
        command=request.command,
        verdict=verdict,
        affirmative=False,
        field=request.field_label,
        bounds=dict(request.bounds),
        inputs=list(request.inputs),
        result=result,
    )


def run_command(request: CommandRequest, commands: Dict[str, Callable[[CommandRequest], CommandReport]]) -> CommandOutcome:
    if request.command not in commands:
        return CommandOutcome(2, error=f"Unknown command {request.command!r}; choose from {', '.join(sorted(commands))}")
    try:
        report = commands[request.command](request)
    except (PurityError, ThetaNotConcentratedError) as exc:
        logger.info("%s: %s", request.command, exc)
        verdict = "hypothesis-failure" if isinstance(exc, PurityError) else "theta-not-concentrated"
        report = negative_report(request, verdict, {"witness": exc.witness, "message": str(exc)})
    except UndeterminedError as exc:
        report = negative_report(request, "undetermined", {"message": str(exc)})
    except (InputError, FileNotFoundError, KeyError) as exc:
        message = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        logger.debug("input error in %s", request.command, exc_info=True)
        return CommandOutcome(2, error=str(message))
    return CommandOutcome(report.exit_code, report)
