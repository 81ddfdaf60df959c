"""Pydantic schemas for configuration files and run outputs."""
from stlplan.schemas.mission import BoxConfig, ChiFile, MissionConfig, SolverConfig, ThetaFile
from stlplan.schemas.result import (
    BenchmarkAggregate,
    BenchmarkRecord,
    BenchmarkReport,
    DatasetEntry,
    EvaluateReport,
    FalsifyReport,
    RoundLog,
    SolveResultModel,
)

__all__ = [
    "BoxConfig",
    "SolverConfig",
    "MissionConfig",
    "ThetaFile",
    "ChiFile",
    "DatasetEntry",
    "RoundLog",
    "SolveResultModel",
    "FalsifyReport",
    "EvaluateReport",
    "BenchmarkRecord",
    "BenchmarkAggregate",
    "BenchmarkReport",
]
