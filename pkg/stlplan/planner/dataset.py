"""Counterexample dataset."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from stlplan.dynamics.exogenous import Box
from stlplan.schemas.result import DatasetEntry, Provenance


@dataclass
class CounterexampleDataset:
    """Ordered exogenous samples with the reason each one was added."""

    chis: list[np.ndarray] = field(default_factory=list)
    provenance: list[Provenance] = field(default_factory=list)

    @classmethod
    def initial(cls, box: Box, rng: np.random.Generator, n0: int) -> CounterexampleDataset:
        samples = box.sample(rng, n0)
        return cls([row.copy() for row in samples], ["initial-sample"] * n0)

    def __len__(self) -> int:
        return len(self.chis)

    @property
    def counterexamples(self) -> int:
        return sum(1 for p in self.provenance if p == "counterexample")

    def append_counterexample(self, chi: np.ndarray) -> None:
        self.chis.append(np.asarray(chi, dtype=float).copy())
        self.provenance.append("counterexample")

    def to_entries(self) -> list[DatasetEntry]:
        return [DatasetEntry(chi=c.tolist(), provenance=p) for c, p in zip(self.chis, self.provenance)]
