"""Scenario files bundling a tower config, presentations and sequence data."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .errors import InvalidConfig
from .extensions import TOPOLOGIES, ExtensionPoint, TowerConfig
from .ingest import read_json, read_sequence_csv
from .structure import ModulePresentation2


@dataclass
class Scenario:
    name: str
    config: TowerConfig
    presentations: list = field(default_factory=list)
    sequence_files: list = field(default_factory=list)
    output_dir: Optional[str] = None
    center: Optional[tuple] = None
    level: int = 1
    sample_precision: int = 3
    topology: str = "greenberg"
    working_precision: int = 32
    degree: Optional[int] = None

    @classmethod
    def from_json(cls, obj, base: Path = Path(".")) -> "Scenario":
        try:
            pres = obj.get("presentations")
            if pres is None and "presentation" in obj:
                pres = [obj["presentation"]]
            sc = cls(
                name=str(obj.get("name", "scenario")),
                config=TowerConfig.from_json(obj["config"]),
                presentations=[ModulePresentation2.from_json(p) for p in pres or ()],
                sequence_files=[str(base / f) for f in obj.get("sequence_files", ())],
                output_dir=obj.get("output_dir"),
                center=None if obj.get("center") is None else tuple(int(x) for x in obj["center"]),
                level=int(obj.get("level", 1)),
                sample_precision=int(obj.get("sample_precision", 3)),
                topology=str(obj.get("topology", "greenberg")),
                working_precision=int(obj.get("working_precision", 32)),
                degree=obj.get("degree"),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidConfig(f"malformed scenario: {exc}") from exc
        return sc

    @classmethod
    def load(cls, path) -> "Scenario":
        path = Path(path)
        return cls.from_json(read_json(path), path.parent)

    def validate(self) -> "Scenario":
        cfg = self.config.validate()
        if self.topology not in TOPOLOGIES:
            raise InvalidConfig(f"unknown topology {self.topology!r}")
        for M in self.presentations:
            if M.ell != cfg.ell or M.nvars != cfg.d:
                raise InvalidConfig("presentation does not match the config's ell and d")
        if not 0 <= self.level <= self.sample_precision <= cfg.precision:
            raise InvalidConfig("need 0 <= level <= sample_precision <= config precision")
        center = self.center_point()
        if center is not None and center.d != cfg.d:
            raise InvalidConfig("center has wrong dimension")
        for f in self.sequence_files:
            try:
                read_sequence_csv(f, cfg.ell)
            except (OSError, ValueError) as exc:
                raise InvalidConfig(f"sequence file {f}: {exc}") from exc
        return self

    def center_point(self) -> Optional[ExtensionPoint]:
        coords = self.center or self.config.cyclotomic_point
        if coords is None:
            return None
        try:
            return ExtensionPoint(self.config.ell, coords, self.config.precision)
        except ValueError as exc:
            raise InvalidConfig(str(exc)) from exc
