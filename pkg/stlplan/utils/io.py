"""File helpers for run outputs."""
import json
from pathlib import Path
from typing import Any, Sequence, Union

import numpy as np
from pydantic import BaseModel

PathLike = Union[str, Path]


def ensure_dir(path: PathLike) -> Path:
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    return path


def write_json(path: PathLike, payload: Union[BaseModel, dict, list]) -> Path:
    """Write a model or plain payload as indented JSON; output is byte-stable for equal input."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if isinstance(payload, BaseModel):
        text = payload.model_dump_json(indent=2)
    else:
        text = json.dumps(payload, indent=2)
    path.write_text(text + "\n", encoding="utf-8")
    return path


def read_json(path: PathLike) -> Any:
    with open(path, encoding="utf-8") as f:
        return json.load(f)


def write_csv(path: PathLike, header: Sequence[str], rows: np.ndarray, fmt: str = "%.17g") -> Path:
    """Write a table with a header row; the default format keeps full float precision."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    np.savetxt(path, np.atleast_2d(rows), delimiter=",", header=",".join(header), comments="", fmt=fmt)
    return path
