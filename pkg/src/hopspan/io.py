"""Point-set JSON and edge-list text files."""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .geometry import PointSet, normalize_edges


def write_points(path, ps: PointSet, meta: dict | None = None) -> None:
    doc = {"points": [[float(x), float(y)] for x, y in ps.xy]}
    if meta is not None:
        doc["meta"] = meta
    Path(path).write_text(json.dumps(doc, indent=None) + "\n")


def read_points(path) -> tuple:
    """Return (PointSet, meta) from a ``{"points": [[x, y], ...]}`` file."""
    doc = json.loads(Path(path).read_text())
    if not isinstance(doc, dict) or "points" not in doc:
        raise ValueError(f"{path}: expected an object with a 'points' key")
    pts = doc["points"]
    if any(not isinstance(p, list) or len(p) != 2 for p in pts):
        raise ValueError(f"{path}: every point must be an [x, y] pair")
    return PointSet(np.array(pts, dtype=np.float64).reshape(-1, 2)), doc.get("meta")


def format_edges(edges: np.ndarray) -> str:
    return "".join(f"{int(i)} {int(j)}\n" for i, j in edges)


def write_edges(path, edges: np.ndarray) -> None:
    Path(path).write_text(format_edges(edges))


def read_edges(path, n: int | None = None) -> np.ndarray:
    rows = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"{path}:{lineno}: expected 'i j', got {line!r}")
        i, j = int(parts[0]), int(parts[1])
        if n is not None and not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"{path}:{lineno}: vertex index out of range 0..{n - 1}")
        rows.append((i, j))
    return normalize_edges(rows, n)
