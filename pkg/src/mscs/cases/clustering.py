"""Three-centre clustering of the Iris data.

A solution vector holds the three centres row by row (12 numbers). The
objective is the total Euclidean distance from every point to its nearest
centre.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from pathlib import Path

import numpy as np

from ..problem import Problem

N_CLUSTERS = 3
N_FEATURES = 4
N_ROWS = 150


class IrisFormatError(ValueError):
    def __init__(self, message: str, lineno: int | None = None):
        where = f"line {lineno}: " if lineno is not None else ""
        super().__init__(where + message)
        self.lineno = lineno


@dataclass(frozen=True, eq=False)
class IrisDataset:
    features: np.ndarray
    labels: tuple

    def __post_init__(self):
        x = np.array(self.features, dtype=float)
        labels = tuple(self.labels)
        if x.shape != (N_ROWS, N_FEATURES) or len(labels) != N_ROWS:
            raise IrisFormatError(f"expected {N_ROWS} rows of {N_FEATURES} features, got {x.shape}")
        classes, counts = np.unique(labels, return_counts=True)
        if classes.size != N_CLUSTERS or np.any(counts != N_ROWS // N_CLUSTERS):
            raise IrisFormatError(f"expected 3 classes of 50, got {dict(zip(classes, counts))}")
        object.__setattr__(self, "features", x)
        object.__setattr__(self, "labels", labels)

    @property
    def classes(self) -> tuple:
        return tuple(sorted(set(self.labels)))

    def label_codes(self) -> np.ndarray:
        index = {c: i for i, c in enumerate(self.classes)}
        return np.array([index[c] for c in self.labels])

    def class_means(self) -> np.ndarray:
        codes = self.label_codes()
        return np.stack([self.features[codes == c].mean(axis=0) for c in range(N_CLUSTERS)])


def load_iris(path) -> IrisDataset:
    """Parse a UCI ``iris.data`` file (``f1,f2,f3,f4,label`` per line)."""
    rows, labels = [], []
    lines = Path(path).read_text().splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    for lineno, line in enumerate(lines, start=1):
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != N_FEATURES + 1:
            raise IrisFormatError(f"expected 5 comma-separated fields, got {len(parts)}", lineno)
        try:
            rows.append([float(p) for p in parts[:N_FEATURES]])
        except ValueError as exc:
            raise IrisFormatError(str(exc), lineno) from None
        if not parts[-1]:
            raise IrisFormatError("empty class label", lineno)
        labels.append(parts[-1])
    if len(rows) != N_ROWS:
        raise IrisFormatError(f"expected {N_ROWS} records, found {len(rows)}")
    return IrisDataset(np.array(rows), tuple(labels))


def nearest_centre(centres, points) -> tuple[np.ndarray, np.ndarray]:
    """Distances to and indices of the nearest centre.

    ``centres`` is ``(..., 12)`` or ``(..., 3, 4)``; results have shape ``(..., n_points)``.
    """
    c = np.asarray(centres, dtype=float)
    c = c.reshape(c.shape[:-1] + (N_CLUSTERS, N_FEATURES)) if c.shape[-1] == N_CLUSTERS * N_FEATURES else c
    diff = points[:, None, :] - c[..., None, :, :]
    dist = np.sqrt(np.sum(diff * diff, axis=-1))
    return dist.min(axis=-1), dist.argmin(axis=-1)


class _IntraClusterDistance:
    def __init__(self, points: np.ndarray):
        self.points = points

    def __call__(self, x):
        d, _ = nearest_centre(x, self.points)
        return d.sum(axis=-1)


def clustering_problem(data: IrisDataset) -> Problem:
    lo = data.features.min(axis=0)
    hi = data.features.max(axis=0)
    return Problem(
        name="iris",
        lower=np.tile(lo, N_CLUSTERS),
        upper=np.tile(hi, N_CLUSTERS),
        objective=_IntraClusterDistance(data.features),
        metadata={"dataset": data},
    )


def clustering_accuracy(centres, data: IrisDataset) -> float:
    """Fraction correct under the best of the 3! cluster-to-class bijections."""
    _, assign = nearest_centre(centres, data.features)
    codes = data.label_codes()
    best = max(
        int(np.sum(np.asarray(perm)[assign] == codes))
        for perm in permutations(range(N_CLUSTERS))
    )
    return best / N_ROWS
