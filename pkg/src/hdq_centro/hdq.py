"""Harmonic differential quadrature weighting matrices.

The test functions on an odd grid of ``N`` points are

    1, sin(pi x), cos(pi x), ..., sin(M pi x), cos(M pi x),   M = (N-1)/2

and ``W`` is the unique matrix with ``(W f)(x_i) = f^(m)(x_i)`` for each of
them.
"""

from __future__ import annotations

import io
import json
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .centro.algebra import DEFAULT_CLASSIFY_TOL, StructureClass, classify
from .errors import InvalidArgument, SingularSystem
from .grid import Grid

CONDITION_WARNING = 1e12


class IllConditionedWarning(RuntimeWarning):
    pass


_SIN_CYCLE = ((np.sin, 1.0), (np.cos, 1.0), (np.sin, -1.0), (np.cos, -1.0))
_COS_CYCLE = ((np.cos, 1.0), (np.sin, -1.0), (np.cos, -1.0), (np.sin, 1.0))


def _check_index(n, l):
    if int(n) != n or n < 1 or n % 2 == 0:
        raise InvalidArgument(f"N must be odd and positive, got {n}")
    if not 0 <= l < n:
        raise InvalidArgument(f"basis index {l} out of range for N={n}")


def basis_value(n: int, l: int, x):
    """Value of the ``l``-th harmonic test function at ``x``."""
    _check_index(n, l)
    return basis_derivative(n, l, x, 0)


def basis_derivative(n: int, l: int, x, m: int):
    """``m``-th derivative of the ``l``-th test function (``m = 0`` gives the value)."""
    _check_index(n, l)
    if m < 0:
        raise InvalidArgument(f"derivative order must be >= 0, got {m}")
    x = np.asarray(x, dtype=float)
    if l == 0:
        return np.full_like(x, 1.0 if m == 0 else 0.0)[()]
    k = (l + 1) // 2
    w = k * np.pi
    # Derivatives cycle with period four: sin -> cos -> -sin -> -cos.
    fn, sign = (_SIN_CYCLE if l % 2 == 1 else _COS_CYCLE)[m % 4]
    val = sign * fn(w * x)
    return (w ** m * val)[()]


def _basis_matrix(points, m):
    n = points.size
    return np.array([basis_derivative(n, l, points, m) for l in range(n)])


def _odd_points(grid):
    pts = grid.points if isinstance(grid, Grid) else np.asarray(grid, dtype=float)
    if pts.size % 2 == 0:
        raise InvalidArgument(f"harmonic basis needs an odd number of points, got {pts.size}")
    return pts


def assemble_collocation(grid) -> np.ndarray:
    """``H[l, j] = f_l(x_j)``: test functions by rows, grid points by columns."""
    return _basis_matrix(_odd_points(grid), 0)


def assemble_derivative_rhs(grid, m: int) -> np.ndarray:
    """``H_m[l, i] = f_l^(m)(x_i)``."""
    return _basis_matrix(_odd_points(grid), m)


@dataclass(frozen=True, eq=False)
class DerivativeOperator:
    order: int
    W: np.ndarray
    grid: Grid
    structure: StructureClass
    condition: float
    ill_conditioned: bool = False

    @property
    def n(self):
        return self.W.shape[0]

    def __matmul__(self, f):
        return self.W @ f

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(f"# hdq m={self.order} N={self.n} grid={self.grid.kind} "
                  f"structure={self.structure.value}\n")
        for row in self.W:
            buf.write(",".join(f"{v:.12g}" for v in row) + "\n")
        return buf.getvalue()

    def to_dict(self):
        return {
            "m": self.order,
            "N": self.n,
            "grid": self.grid.kind,
            "structure": self.structure.value,
            "rows": [[float(f"{v:.12g}") for v in row] for row in self.W],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def weights(grid: Grid, m: int, tol: float = DEFAULT_CLASSIFY_TOL) -> DerivativeOperator:
    """Weighting matrix of the ``m``-th derivative on ``grid``.

    Solves ``H W^T = H_m`` with an LU factorization of ``H``; the normal
    equations are never formed. Raises :class:`SingularSystem` when ``H`` is
    numerically singular and warns when its condition number exceeds 1e12.
    """
    if int(m) != m or m < 1:
        raise InvalidArgument(f"derivative order must be a positive integer, got {m}")
    h = assemble_collocation(grid)
    hm = assemble_derivative_rhs(grid, m)
    cond = float(np.linalg.cond(h))
    if not np.isfinite(cond) or cond * np.finfo(float).eps >= 1.0:
        raise SingularSystem(f"collocation matrix is singular (condition {cond:.3g})", condition=cond)
    ill = cond > CONDITION_WARNING
    if ill:
        warnings.warn(f"collocation matrix condition {cond:.3g} exceeds {CONDITION_WARNING:.0e}",
                      IllConditionedWarning, stacklevel=2)
    lu = scipy.linalg.lu_factor(h)
    w = scipy.linalg.lu_solve(lu, hm).T.copy()
    w.flags.writeable = False
    return DerivativeOperator(order=int(m), W=w, grid=grid, structure=classify(w, tol),
                              condition=cond, ill_conditioned=ill)


def exactness_error(op: DerivativeOperator) -> float:
    """Largest ``|(W f_l)(x_i) - f_l^(m)(x_i)|`` over all test functions and points."""
    h = assemble_collocation(op.grid)
    hm = assemble_derivative_rhs(op.grid, op.order)
    return float(np.max(np.abs(op.W @ h.T - hm.T)))


def operator_from_csv(text: str) -> tuple[dict, np.ndarray]:
    """Parse the CSV form written by :meth:`DerivativeOperator.to_csv`."""
    lines = text.strip().splitlines()
    if not lines or not lines[0].startswith("# hdq"):
        raise InvalidArgument("operator CSV must begin with a '# hdq' header")
    meta = dict(tok.split("=", 1) for tok in lines[0][len("# hdq"):].split())
    rows = np.array([[float(v) for v in ln.split(",")] for ln in lines[1:]])
    return meta, rows
