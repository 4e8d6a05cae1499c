"""Pydantic models for check reports, certificates, run configuration and suite state."""

import hashlib
import json
import os
from pathlib import Path
from typing import Literal, Optional

from dotenv import dotenv_values
from pydantic import BaseModel, ConfigDict, Field, model_validator

from tensorspace import basis_cap, space_dimension

SCHEMA_VERSION = 1
TOOL_VERSION = "0.1.0"

Status = Literal["pass", "fail", "skipped"]


class CheckReport(BaseModel):
    """Result of one check run at fixed parameters."""

    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = Field(SCHEMA_VERSION, alias="schema")
    id: str = Field(..., description="Deterministic ID from check name and parameters")
    check: str
    suite: str = Field(..., description="Suite the check belongs to (relations, omega, ...)")
    parameters: dict = Field(default_factory=dict)
    status: Status
    dimensions: dict[str, int] = Field(default_factory=dict)
    witnesses: list[str] = Field(default_factory=list, description="Basis tuples or relation instances that fail")
    notes: list[str] = Field(default_factory=list)
    wall_time: Optional[float] = Field(None, description="Seconds; only serialized when timings are recorded")
    tool_version: str = TOOL_VERSION
    seed: Optional[int] = None

    @model_validator(mode="after")
    def _fail_needs_evidence(self) -> "CheckReport":
        if self.status == "fail":
            has_gap = any(key.endswith("_gap") and value for key, value in self.dimensions.items())
            if not self.witnesses and not has_gap:
                raise ValueError(f"failed check {self.check!r} carries neither a witness nor a dimension gap")
        return self

    @classmethod
    def create(
        cls,
        check: str,
        suite: str,
        parameters: dict,
        status: Status,
        dimensions: Optional[dict[str, int]] = None,
        witnesses: Optional[list[str]] = None,
        notes: Optional[list[str]] = None,
        seed: Optional[int] = None,
    ) -> "CheckReport":
        """Create a CheckReport with deterministic ID generation."""
        params_str = json.dumps(parameters, sort_keys=True)
        id_str = f"{check}|{params_str}"
        report_id = hashlib.sha256(id_str.encode()).hexdigest()[:16]
        return cls(
            id=report_id,
            check=check,
            suite=suite,
            parameters=parameters,
            status=status,
            dimensions=dimensions or {},
            witnesses=witnesses or [],
            notes=notes or [],
            seed=seed,
        )

    @classmethod
    def skipped(cls, check: str, suite: str, parameters: dict, reason: str) -> "CheckReport":
        return cls.create(check, suite, parameters, "skipped", notes=[reason])

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    @property
    def tag(self) -> str:
        return {"pass": "[OK]", "fail": "[X]", "skipped": "[!]"}[self.status]

    def summary_line(self) -> str:
        params = " ".join(f"{k}={v}" for k, v in self.parameters.items())
        line = f"{self.tag} {self.check} {params}".rstrip()
        if self.wall_time is not None:
            line += f" ({self.wall_time:.2f}s)"
        if self.status == "skipped" and self.notes:
            line += f": {self.notes[0]}"
        return line


class DimCertificate(BaseModel):
    """Dimension of a span, centralizer or closure with the evidence behind it."""

    dimension: int = Field(..., ge=0)
    method: Literal["exact", "evaluated"]
    points: list[str] = Field(default_factory=list, description="Evaluation points q = a/b")
    pivot_digest: str = ""
    agreeing: bool = True
    resampled: int = Field(0, description="Extra evaluation points drawn after a disagreement")

    @model_validator(mode="after")
    def _evaluated_needs_points(self) -> "DimCertificate":
        if self.method == "evaluated" and len(self.points) < 2:
            raise ValueError("evaluated certificates need at least two evaluation points")
        return self


def _env_mode() -> str:
    return os.getenv("DUPLEX_MODE", "eval")


def _env_seed() -> int:
    return int(os.getenv("DUPLEX_SEED", "0"))


def _env_output() -> str:
    return os.getenv("DUPLEX_OUTPUT", "report.json")


class RunConfig(BaseModel):
    """Parameters shared by every check in one run."""

    r: int = Field(1, ge=1, description="Rank parameter; the enhanced space has dimension 2r+4")
    m: int = Field(2, ge=1, description="Tensor power")
    mode: Literal["exact", "eval"] = Field(default_factory=_env_mode)
    seed: int = Field(default_factory=_env_seed, ge=0, lt=2**64)
    cap: int = Field(default_factory=basis_cap, ge=1, description="Guard on (2r+4)^m")
    output: str = Field(default_factory=_env_output)
    record_timings: bool = False
    spot_check: bool = False

    @property
    def within_cap(self) -> bool:
        return space_dimension(self.r, self.m) <= self.cap

    def params(self) -> dict:
        return {"r": self.r, "m": self.m}

    @classmethod
    def from_env_file(cls, path: str, **overrides) -> "RunConfig":
        """
        Build a config from a dotenv-format file.

        Recognized keys: R, M, MODE, SEED, CAP, OUTPUT, RECORD_TIMINGS, SPOT_CHECK.
        Missing keys fall back to the field defaults.
        """
        values = {k.upper(): v for k, v in dotenv_values(path).items() if v not in (None, "")}
        mapping = {
            "R": ("r", int),
            "M": ("m", int),
            "MODE": ("mode", str.lower),
            "SEED": ("seed", int),
            "CAP": ("cap", int),
            "OUTPUT": ("output", str),
            "RECORD_TIMINGS": ("record_timings", _truthy),
            "SPOT_CHECK": ("spot_check", _truthy),
        }
        kwargs = {}
        for key, (field, convert) in mapping.items():
            if key in values:
                kwargs[field] = convert(values[key])
        kwargs.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**kwargs)


def _truthy(value: str) -> bool:
    return value.strip().lower() in {"1", "true", "yes", "on"}


class SuiteState(BaseModel):
    """Shared state for the check-suite graph."""

    config: RunConfig = Field(default_factory=RunConfig)
    command: str = Field(..., description="relations, omega, qaction, duality, semisimple, schur or report-all")
    options: dict = Field(default_factory=dict, description="Command-specific options (family, side, I, J, gen, ...)")

    reports: list[CheckReport] = Field(default_factory=list)
    errors: list[str] = Field(default_factory=list, description="Unexpected exceptions raised inside nodes")
    dumps: list[str] = Field(default_factory=list, description="Paths of sparse-matrix dumps written")

    @property
    def failed(self) -> bool:
        return bool(self.errors) or any(rep.status == "fail" for rep in self.reports)


def reports_document(reports: list[CheckReport], record_timings: bool = False) -> dict:
    exclude = None if record_timings else {"wall_time"}
    return {
        "schema": SCHEMA_VERSION,
        "tool_version": TOOL_VERSION,
        "reports": [rep.model_dump(mode="json", by_alias=True, exclude=exclude) for rep in reports],
    }


def write_reports(reports: list[CheckReport], path: str, record_timings: bool = False) -> str:
    """Serialize reports as JSON (stable key order) and write them to path."""
    text = json.dumps(reports_document(reports, record_timings), indent=2, sort_keys=True) + "\n"
    target = Path(path)
    if target.parent and not target.parent.exists():
        target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text)
    return text
