"""Engine configuration: file paths, oracle endpoints, defaults, server limits."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from .bloom import BloomFilter
from .graph.patterns import PatternLibrary, builtin_library
from .plausibility import PlausibilityReference
from .rewards import (
    GradingContext,
    HttpPropertyOracle,
    HttpReactionOracle,
    StubSolubilityOracle,
    TableReactionOracle,
)

ENV_CONFIG = "MOLREWARD_CONFIG"
SCHEMA_VERSION = 1


@dataclass
class ServerConfig:
    host: str = "127.0.0.1"
    port: int = 8321
    max_in_flight: int = 8
    request_timeout: float = 30.0

    def __post_init__(self):
        if self.max_in_flight < 1:
            raise ValueError("max_in_flight must be positive")
        if self.request_timeout <= 0:
            raise ValueError("request_timeout must be positive")


@dataclass
class EngineConfig:
    plausibility_dir: str | None = None
    purchasable_filter: str | None = None
    pattern_library: str | None = None
    reaction_oracle: dict | None = None
    property_oracle: dict | None = None
    partial_credit: bool = False
    quality_bonus: bool = False
    server: ServerConfig = field(default_factory=ServerConfig)
    base_dir: Path = field(default_factory=Path)

    @staticmethod
    def load(path: str | Path | None = None) -> "EngineConfig":
        """Read config JSON; ``MOLREWARD_CONFIG`` supplies the default path."""
        if path is None:
            path = os.environ.get(ENV_CONFIG)
        if path is None:
            return EngineConfig()
        path = Path(path)
        raw = json.loads(path.read_text())
        defaults = raw.get("defaults") or {}
        server = ServerConfig(**(raw.get("server") or {}))
        return EngineConfig(
            plausibility_dir=raw.get("plausibility_dir"),
            purchasable_filter=raw.get("purchasable_filter"),
            pattern_library=raw.get("pattern_library"),
            reaction_oracle=raw.get("reaction_oracle"),
            property_oracle=raw.get("property_oracle"),
            partial_credit=bool(defaults.get("partial_credit", False)),
            quality_bonus=bool(defaults.get("quality_bonus", False)),
            server=server,
            base_dir=path.parent,
        )

    def _resolve(self, p: str) -> Path:
        path = Path(p)
        return path if path.is_absolute() else self.base_dir / path

    def build_context(self) -> GradingContext:
        """Load artifacts and wire up a grading context; missing files raise."""
        patterns = PatternLibrary.from_file(self._resolve(self.pattern_library)) \
            if self.pattern_library else builtin_library()
        plausibility = PlausibilityReference.load(self._resolve(self.plausibility_dir)) \
            if self.plausibility_dir else None
        purchasable = BloomFilter.load(self._resolve(self.purchasable_filter)) \
            if self.purchasable_filter else None
        return GradingContext(
            patterns=patterns,
            plausibility=plausibility,
            purchasable=purchasable,
            reaction_oracle=self._build_reaction_oracle(),
            property_oracle=self._build_property_oracle(),
            default_partial_credit=self.partial_credit,
            default_quality_bonus=self.quality_bonus,
        )

    def _build_reaction_oracle(self):
        spec = self.reaction_oracle
        if not spec:
            return None
        kind = spec.get("kind")
        if kind == "http":
            return HttpReactionOracle(url=spec["url"],
                                      timeout=float(spec.get("timeout", 10.0)))
        if kind == "table":
            entries = json.loads(self._resolve(spec["path"]).read_text())
            return TableReactionOracle.from_entries(
                [(e["reactants"], e["product"]) for e in entries])
        raise ValueError(f"unknown reaction oracle kind {kind!r}")

    def _build_property_oracle(self):
        spec = self.property_oracle
        if not spec:
            return None
        kind = spec.get("kind")
        if kind == "http":
            return HttpPropertyOracle(url=spec["url"],
                                      timeout=float(spec.get("timeout", 10.0)))
        if kind == "stub":
            return StubSolubilityOracle()
        raise ValueError(f"unknown property oracle kind {kind!r}")

    def artifact_versions(self) -> dict:
        """Version metadata surfaced by /healthz."""
        from . import __version__

        info: dict = {"schema": SCHEMA_VERSION, "engine": __version__}
        if self.plausibility_dir:
            manifest = json.loads(
                (self._resolve(self.plausibility_dir) / "manifest.json").read_text())
            info["plausibility"] = {
                "build_date": manifest.get("build_date"),
                "molecules": manifest.get("molecules"),
                "format_version": manifest.get("format_version"),
            }
        if self.purchasable_filter:
            f = BloomFilter.load(self._resolve(self.purchasable_filter))
            info["purchasable"] = {"m": f.m, "k": f.k, "inserted": f.inserted}
        patterns = PatternLibrary.from_file(self._resolve(self.pattern_library)) \
            if self.pattern_library else builtin_library()
        info["patterns"] = {"version": patterns.version,
                            "count": len(patterns.names())}
        return info
