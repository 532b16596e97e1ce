"""Pluggable oracle interfaces for reaction outcomes and molecular properties.

Production deployments point these at external predictor services; tests use
the deterministic stubs. Oracle outages raise, never return a zero grade:
silent zeros would poison group advantages upstream.
"""

from __future__ import annotations

import json
import urllib.error
import urllib.request
from dataclasses import dataclass, field
from typing import Protocol

from ..graph import heavy_atom_count
from ..smiles import Molecule, SmilesError, parse, write_canonical


class OracleUnavailableError(RuntimeError):
    """The oracle endpoint is down or misbehaving; the grade must not be 0."""


class ReactionOracle(Protocol):
    def predict_product(self, reactants: list[str]) -> str:
        """Major product SMILES for canonical reactant SMILES, sorted order."""
        ...


class PropertyOracle(Protocol):
    def predict(self, smiles: str) -> float:
        ...


@dataclass
class TableReactionOracle:
    """Deterministic lookup oracle keyed by the sorted canonical reactants."""

    table: dict[tuple[str, ...], str] = field(default_factory=dict)

    @staticmethod
    def from_entries(entries: list[tuple[list[str], str]]) -> "TableReactionOracle":
        table = {}
        for reactants, product in entries:
            key = tuple(sorted(write_canonical(parse(r)) for r in reactants))
            table[key] = write_canonical(parse(product))
        return TableReactionOracle(table)

    def predict_product(self, reactants: list[str]) -> str:
        key = tuple(sorted(reactants))
        if key not in self.table:
            return ""
        return self.table[key]


@dataclass
class StubSolubilityOracle:
    """Toy logS model: oxygen-rich small molecules dissolve best.

    logS = oxygen_weight * (#O) - size_weight * (heavy atoms).
    """

    oxygen_weight: float = 1.5
    size_weight: float = 0.25

    def predict(self, smiles: str) -> float:
        try:
            mol = parse(smiles)
        except SmilesError as e:
            raise ValueError(f"property oracle got unparseable SMILES: {e}") from e
        oxygens = sum(1 for a in mol.atoms if a.element == "O")
        return self.oxygen_weight * oxygens - self.size_weight * heavy_atom_count(mol)


@dataclass
class HttpReactionOracle:
    url: str
    timeout: float = 10.0

    def predict_product(self, reactants: list[str]) -> str:
        payload = json.dumps({"reactants": reactants}).encode()
        request = urllib.request.Request(
            self.url, data=payload, headers={"Content-Type": "application/json"})
        try:
            with urllib.request.urlopen(request, timeout=self.timeout) as resp:
                body = json.loads(resp.read().decode())
        except (urllib.error.URLError, OSError, ValueError) as e:
            raise OracleUnavailableError(f"reaction oracle at {self.url}: {e}") from e
        if "product" not in body:
            raise OracleUnavailableError(f"reaction oracle returned no product field")
        return str(body["product"])


@dataclass
class HttpPropertyOracle:
    url: str
    timeout: float = 10.0

    def predict(self, smiles: str) -> float:
        payload = json.dumps({"smiles": smiles}).encode()
        request = urllib.request.Request(
            self.url, data=payload, headers={"Content-Type": "application/json"})
        try:
            with urllib.request.urlopen(request, timeout=self.timeout) as resp:
                body = json.loads(resp.read().decode())
            return float(body["value"])
        except (urllib.error.URLError, OSError, ValueError, KeyError) as e:
            raise OracleUnavailableError(f"property oracle at {self.url}: {e}") from e
