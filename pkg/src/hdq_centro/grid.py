"""Symmetric sample grids on [0, 1].

Every generator returns points satisfying ``x[N-1-k] == 1 - x[k]``, which is
what makes the harmonic weighting matrices (skew-)centrosymmetric.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidArgument

GRID_KINDS = ("uniform", "chebyshev", "delta")
DEFAULT_DELTA = 1e-4


@dataclass(frozen=True, eq=False)
class Grid:
    """Ordered sample points on [0, 1].

    ``points`` is stored as a read-only float array. ``delta`` is only set for
    the ``"delta"`` family.
    """

    points: np.ndarray
    kind: str = "custom"
    delta: float | None = None
    symmetric: bool = field(init=False)

    def __post_init__(self):
        pts = np.array(self.points, dtype=float)
        if pts.ndim != 1 or pts.size < 2:
            raise InvalidArgument("grid points must be a 1-D sequence of length >= 2")
        if np.any(np.diff(pts) <= 0):
            raise InvalidArgument("grid points must be strictly increasing")
        if pts[0] != 0.0 or pts[-1] != 1.0:
            raise InvalidArgument("grid must start at 0 and end at 1")
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "symmetric", _mirror_error(pts) <= 1e-14)

    @property
    def n(self) -> int:
        return self.points.size

    def __len__(self):
        return self.points.size

    def __eq__(self, other):
        if not isinstance(other, Grid):
            return NotImplemented
        return (self.kind == other.kind and self.delta == other.delta
                and np.array_equal(self.points, other.points))

    def __hash__(self):
        return hash((self.kind, self.delta, self.points.tobytes()))

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("x\n")
        for x in self.points:
            buf.write(f"{x:.17g}\n")
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, kind: str = "custom") -> "Grid":
        lines = [ln.strip() for ln in text.strip().splitlines()]
        if not lines or lines[0] != "x":
            raise InvalidArgument("grid CSV must start with header line 'x'")
        return cls(np.array([float(v) for v in lines[1:]]), kind=kind)


def _check_odd(n, minimum=3):
    if int(n) != n or n < minimum or n % 2 == 0:
        raise InvalidArgument(f"N must be an odd integer >= {minimum}, got {n}")


def _mirror_error(points):
    return float(np.max(np.abs(points[::-1] - (1.0 - points))))


def uniform_grid(n: int) -> Grid:
    """Equally spaced points ``(k-1)/(N-1)``."""
    _check_odd(n)
    pts = np.arange(n) / (n - 1)
    return Grid(_symmetrize(pts), kind="uniform")


def chebyshev_grid(n: int) -> Grid:
    """Shifted Chebyshev-Gauss-Lobatto points ``(1 - cos((k-1)pi/(N-1)))/2``."""
    _check_odd(n)
    pts = 0.5 * (1.0 - np.cos(np.arange(n) * np.pi / (n - 1)))
    return Grid(_symmetrize(pts), kind="chebyshev")


def delta_grid(n: int, delta: float = DEFAULT_DELTA) -> Grid:
    """Uniform grid over the inner points with an extra point ``delta`` inside each end.

    The points are ``0, delta, 1/(N-3), ..., (N-4)/(N-3), 1-delta, 1``.
    Requires ``N >= 5`` and ``0 < delta < 1/(2(N-3))`` so the extra points
    stay strictly between the boundary and the first inner point.
    """
    _check_odd(n, minimum=5)
    limit = 1.0 / (2 * (n - 3))
    if not 0.0 < delta < limit:
        raise InvalidArgument(f"delta must lie in (0, {limit:.6g}) for N={n}, got {delta}")
    inner = np.arange(1, n - 3) / (n - 3)
    pts = np.concatenate(([0.0, delta], inner, [1.0 - delta, 1.0]))
    return Grid(_symmetrize(pts), kind="delta", delta=float(delta))


def make_grid(kind: str, n: int, delta: float = DEFAULT_DELTA) -> Grid:
    if kind == "uniform":
        return uniform_grid(n)
    if kind == "chebyshev":
        return chebyshev_grid(n)
    if kind == "delta":
        return delta_grid(n, delta)
    raise InvalidArgument(f"unknown grid kind {kind!r}; expected one of {GRID_KINDS}")


def is_symmetric(grid, tol: float = 1e-14) -> bool:
    """True iff ``max_k |x[N-1-k] - (1 - x[k])| <= tol``."""
    pts = grid.points if isinstance(grid, Grid) else np.asarray(grid, dtype=float)
    return _mirror_error(pts) <= tol


def _symmetrize(pts):
    # Copy the left half onto the right so the mirror identity holds to rounding.
    n = pts.size
    out = pts.copy()
    out[n - 1 - np.arange(n // 2)] = 1.0 - pts[: n // 2]
    out[n // 2] = 0.5
    return out
