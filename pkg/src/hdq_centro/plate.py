"""Free vibration of thin rectangular Kirchhoff plates with HDQ operators.

The interior operator is

    L = Dx (x) I + 2 alpha^2 Bx (x) By + alpha^4 I (x) Dy

on deflections ordered x-major, and its eigenvalues are ``omega_bar^2`` with
``omega_bar^2 = rho h a^4 omega^2 / D`` and ``alpha = a / b``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .centro.algebra import DEFAULT_CLASSIFY_TOL, StructureClass, classify, project, structure_residuals
from .centro.blocks import reduced_centro, symmetric_basis_blocks
from .centro.eigen import SKEW_SYMMETRIC, SYMMETRIC
from .errors import InvalidArgument, NumericalInstability, ReferenceMissing, StructureError
from .grid import DEFAULT_DELTA, Grid, delta_grid, is_symmetric, uniform_grid
from .hdq import weights

EDGE_TYPES = ("SS", "C")
# Raw mirror residual allowed before a symmetric-edge operator is projected
# onto the centrosymmetric class; rounding on delta grids reaches ~1e-8.
STRUCTURE_GUARD = 1e-6
METHODS = ("dense", "one_axis", "two_axis")

TABLE1_ALPHAS = (0.4, 2.0 / 3.0, 1.0, 1.5, 2.5)
TABLE1_REFERENCES = {
    "paper": (12.1408, 17.3821, 28.9656, 56.3752, 145.550),
    "leissa": (12.1347, 17.3703, 28.9509, 56.3481, 145.484),
}


def parse_bc(text: str):
    """Parse ``"SS-C-SS-C"`` into ``(bc_x, bc_y)``.

    Edges are listed counter-clockwise from x=0: (x=0, y=0, x=1, y=1), so
    ``SS-C-SS-C`` is simply supported on the x-edges and clamped on the y-edges.
    """
    parts = text.upper().split("-")
    if len(parts) != 4 or any(p not in EDGE_TYPES for p in parts):
        raise InvalidArgument(f"boundary spec must be four of {EDGE_TYPES} joined by '-', got {text!r}")
    return (parts[0], parts[2]), (parts[1], parts[3])


@dataclass(frozen=True)
class PlateSpec:
    bc_x: tuple
    bc_y: tuple
    alpha: float
    nx: int
    ny: int
    delta: float = DEFAULT_DELTA

    def __post_init__(self):
        for name, bc in (("bc_x", self.bc_x), ("bc_y", self.bc_y)):
            if len(bc) != 2 or any(e not in EDGE_TYPES for e in bc):
                raise InvalidArgument(f"{name} must be a pair of {EDGE_TYPES}, got {bc!r}")
        object.__setattr__(self, "bc_x", tuple(self.bc_x))
        object.__setattr__(self, "bc_y", tuple(self.bc_y))
        if not self.alpha > 0:
            raise InvalidArgument(f"alpha must be positive, got {self.alpha}")
        for name in ("nx", "ny"):
            n = getattr(self, name)
            if int(n) != n or n < 3 or n % 2 == 0:
                raise InvalidArgument(f"{name} must be an odd integer >= 3, got {n}")

    @classmethod
    def from_string(cls, bc: str, alpha: float, n: int, ny: int | None = None, delta=DEFAULT_DELTA):
        bc_x, bc_y = parse_bc(bc)
        return cls(bc_x, bc_y, alpha, n, n if ny is None else ny, delta)

    @property
    def symmetric_x(self):
        return self.bc_x[0] == self.bc_x[1]

    @property
    def symmetric_y(self):
        return self.bc_y[0] == self.bc_y[1]

    @property
    def bc_string(self):
        return "-".join((self.bc_x[0], self.bc_y[0], self.bc_x[1], self.bc_y[1]))

    def grid_x(self):
        return axis_grid(self.bc_x, self.nx, self.delta)

    def grid_y(self):
        return axis_grid(self.bc_y, self.ny, self.delta)

    def swapped(self):
        """The same plate with the axes exchanged and ``alpha -> 1/alpha``."""
        return PlateSpec(self.bc_y, self.bc_x, 1.0 / self.alpha, self.ny, self.nx, self.delta)


def axis_grid(bc, n, delta=DEFAULT_DELTA) -> Grid:
    """Uniform grid unless an edge is clamped, in which case the delta grid."""
    return delta_grid(n, delta) if "C" in bc else uniform_grid(n)


@dataclass(frozen=True, eq=False)
class AxisOperators:
    """Boundary-modified 2nd (``B``) and 4th (``D``) derivative operators on the
    free unknowns of one axis. ``free`` indexes those unknowns in the grid."""

    B: np.ndarray
    D: np.ndarray
    free: np.ndarray
    grid: Grid
    bc: tuple

    @property
    def size(self):
        return self.B.shape[0]


def modified_operators(bc, grid: Grid) -> AxisOperators:
    """Build interior 2nd/4th derivative operators with edge conditions built in.

    Every edge has zero deflection. A simply supported edge also has zero
    bending moment: the boundary row of the inner second-derivative factor is
    zeroed before forming ``D = B @ B_mod``. A clamped edge needs a delta grid;
    its slope condition, written with the first-derivative row at the delta
    point, replaces the governing equation there and the delta unknown is
    condensed out.
    """
    bc = tuple(bc)
    if len(bc) != 2 or any(e not in EDGE_TYPES for e in bc):
        raise InvalidArgument(f"edge pair must be two of {EDGE_TYPES}, got {bc!r}")
    if not is_symmetric(grid, 1e-14):
        raise StructureError("boundary modification requires a symmetric grid")
    if "C" in bc and grid.kind != "delta":
        raise InvalidArgument("a clamped edge requires a delta grid")
    n = grid.n
    b = np.array(weights(grid, 2).W)
    b_mod = b.copy()
    ends = (0, n - 1)
    for edge, row in zip(bc, ends):
        if edge == "SS":
            b_mod[row] = 0.0
    d = b @ b_mod

    neighbours = [nb for edge, nb in zip(bc, (1, n - 2)) if edge == "C"]
    free = np.array([i for i in range(1, n - 1) if i not in neighbours])
    if neighbours:
        a = np.array(weights(grid, 1).W)
        nb = np.array(neighbours)
        # Slope rows at the delta points, deflection at the boundary already zero:
        # a[nb, nb] w_nb + a[nb, free] w_free = 0.
        coupling = -np.linalg.solve(a[np.ix_(nb, nb)], a[np.ix_(nb, free)])
        b_bar = b[np.ix_(free, free)] + b[np.ix_(free, nb)] @ coupling
        d_bar = d[np.ix_(free, free)] + d[np.ix_(free, nb)] @ coupling
    else:
        b_bar = b[np.ix_(free, free)]
        d_bar = d[np.ix_(free, free)]
    if bc[0] == bc[1]:
        b_bar = _enforce_centro(b_bar, "second-derivative")
        d_bar = _enforce_centro(d_bar, "fourth-derivative")
    return AxisOperators(b_bar, d_bar, free, grid, bc)


def _enforce_centro(m, name):
    residual = structure_residuals(m)[0]
    if residual > STRUCTURE_GUARD:
        raise StructureError(f"{name} operator mirror residual {residual:.3g} exceeds {STRUCTURE_GUARD:g}")
    return project(m, "centro")


@dataclass(frozen=True, eq=False)
class PlateOperator:
    spec: PlateSpec
    x: AxisOperators
    y: AxisOperators
    matrix: np.ndarray
    parts: tuple
    structure: StructureClass

    @property
    def size(self):
        return self.matrix.shape[0]

    @property
    def shape2d(self):
        return self.x.size, self.y.size

    def norm(self):
        return float(np.linalg.norm(self.matrix, np.inf))


def combine(spec_alpha, dx, bxby, dy):
    """The weighted Kronecker sum, in one fixed evaluation order."""
    a2 = spec_alpha * spec_alpha
    return dx + (2.0 * a2) * bxby + (a2 * a2) * dy


def assemble_plate(spec: PlateSpec, tol=DEFAULT_CLASSIFY_TOL) -> PlateOperator:
    ox = modified_operators(spec.bc_x, spec.grid_x())
    oy = modified_operators(spec.bc_y, spec.grid_y())
    ix = np.eye(ox.size)
    iy = np.eye(oy.size)
    parts = (np.kron(ox.D, iy), np.kron(ox.B, oy.B), np.kron(ix, oy.D))
    for p in parts:
        p.flags.writeable = False
    matrix = combine(spec.alpha, *parts)
    return PlateOperator(spec, ox, oy, matrix, parts, classify(matrix, tol))


@dataclass(frozen=True)
class PlateBlock:
    label: str
    matrix: np.ndarray

    @property
    def size(self):
        return self.matrix.shape[0]


def _axis_blocks(ops: AxisOperators, tol):
    bs = symmetric_basis_blocks(ops.B, tol)
    ds = symmetric_basis_blocks(ops.D, tol)
    return {"skew": (bs[0], ds[0]), "sym": (bs[1], ds[1])}


def two_axis_blocks(op: PlateOperator, tol=DEFAULT_CLASSIFY_TOL):
    """Four decoupled blocks of the plate operator, one per pair of axis symmetries.

    Block ``(px, py)`` is ``Dx_px (x) I + 2a^2 Bx_px (x) By_py + a^4 I (x) Dy_py``
    built from the per-axis symmetry-basis blocks; it equals the matching
    diagonal block of ``(Kx (x) Ky)^T L (Kx (x) Ky)``. Order: skew-skew,
    skew-sym, sym-skew, sym-sym (x parity first).
    """
    spec = op.spec
    if not (spec.symmetric_x and spec.symmetric_y):
        raise StructureError(f"two-axis reduction needs symmetric edge pairs on both axes, "
                             f"got {spec.bc_string}")
    try:
        bx = _axis_blocks(op.x, tol)
        by = _axis_blocks(op.y, tol)
    except StructureError as exc:
        raise StructureError(f"axis operator is not centrosymmetric: {exc}") from exc
    blocks = []
    for px in ("skew", "sym"):
        b_x, d_x = bx[px]
        for py in ("skew", "sym"):
            b_y, d_y = by[py]
            m = combine(spec.alpha,
                        np.kron(d_x, np.eye(d_y.shape[0])),
                        np.kron(b_x, b_y),
                        np.kron(np.eye(d_x.shape[0]), d_y))
            blocks.append(PlateBlock(f"{px}-{py}", m))
    return blocks


def one_axis_blocks(op: PlateOperator, tol=DEFAULT_CLASSIFY_TOL):
    """The two half-size blocks of the full centrosymmetric interior operator."""
    if op.size % 2 == 0:
        raise StructureError(f"one-axis reduction needs odd interior size, got {op.size}")
    if not (op.spec.symmetric_x and op.spec.symmetric_y):
        raise StructureError(f"one-axis reduction needs symmetric edge pairs, got {op.spec.bc_string}")
    skew_block, sym_block = reduced_centro(op.matrix, tol)
    return [PlateBlock("skew", skew_block), PlateBlock("sym", sym_block)]


@dataclass(frozen=True)
class PlateSolution:
    """The lowest ``omega_bar`` values, ascending, with one symmetry label each.

    ``eigenvalues`` keeps the complete operator spectrum (complex, full
    multiplicity) sorted by real part; only the reported modes are checked.
    """

    spec: PlateSpec
    method: str
    omega: np.ndarray
    labels: tuple
    eigenvalues: np.ndarray
    eigen_labels: tuple

    @property
    def fundamental(self):
        return float(self.omega[0])

    def distinct(self, rtol=1e-8):
        """Frequencies with near-duplicates merged; presentation only."""
        out = []
        for w in self.omega:
            if not out or abs(w - out[-1]) > rtol * max(abs(w), 1.0):
                out.append(float(w))
        return out


def plate_spectrum(op: PlateOperator, method="two_axis", tol=DEFAULT_CLASSIFY_TOL):
    """Full eigenvalue multiset of the interior operator, sorted by real part.

    Returns ``(eigenvalues, labels)``. No stability check is applied.
    """
    if method == "dense":
        lam = np.linalg.eigvals(op.matrix).astype(complex)
        labels = ("unlabeled",) * lam.size
    elif method in ("one_axis", "two_axis"):
        blocks = one_axis_blocks(op, tol) if method == "one_axis" else two_axis_blocks(op, tol)
        lam = np.concatenate([np.linalg.eigvals(b.matrix).astype(complex) for b in blocks])
        labels = tuple(b.label for b in blocks for _ in range(b.size))
    else:
        raise InvalidArgument(f"method must be one of {METHODS}, got {method!r}")
    order = np.lexsort((lam.imag, lam.real))
    return lam[order], tuple(labels[i] for i in order)


def to_frequencies(eigenvalues, scale, tol=1e-8):
    """Principal square roots of plate eigenvalues after the stability check.

    Any eigenvalue with ``|imag| > tol*scale`` or ``real < -tol*scale`` raises
    :class:`NumericalInstability`.
    """
    lam = np.asarray(eigenvalues, dtype=complex)
    bad = np.flatnonzero(np.abs(lam.imag) > tol * scale)
    if bad.size:
        z = lam[bad[0]]
        raise NumericalInstability(
            f"complex plate eigenvalue {z.real:.6g}{z.imag:+.6g}j at mode {bad[0] + 1} "
            f"(operator norm {scale:.3g}); request fewer modes or refine the grid")
    neg = np.flatnonzero(lam.real < -tol * scale)
    if neg.size:
        raise NumericalInstability(
            f"negative plate eigenvalue {lam[neg[0]].real:.6g} at mode {neg[0] + 1} "
            f"(operator norm {scale:.3g})")
    return np.sqrt(np.clip(lam.real, 0.0, None))


def solve_plate(spec_or_op, method="two_axis", modes=1, tol=DEFAULT_CLASSIFY_TOL) -> PlateSolution:
    """Lowest ``modes`` natural frequencies ``omega_bar`` of a plate, ascending.

    ``method`` is ``dense`` (full operator), ``one_axis`` (two half-size
    blocks) or ``two_axis`` (four quarter-size blocks); ``auto`` picks
    ``two_axis`` when both edge pairs are symmetric and falls back to dense.
    ``modes=None`` reports and checks the whole spectrum. Uniform-grid HDQ
    operators carry spurious complex pairs at the top of the spectrum, so
    asking for more modes than the grid resolves raises
    :class:`NumericalInstability`.
    """
    op = spec_or_op if isinstance(spec_or_op, PlateOperator) else assemble_plate(spec_or_op, tol)
    spec = op.spec
    if method == "auto":
        method = "two_axis" if spec.symmetric_x and spec.symmetric_y else "dense"
    lam, labels = plate_spectrum(op, method, tol)
    k = lam.size if modes is None else int(modes)
    if not 1 <= k <= lam.size:
        raise InvalidArgument(f"modes must be between 1 and {lam.size}, got {modes}")
    omega = to_frequencies(lam[:k], op.norm())
    return PlateSolution(spec, method, omega, labels[:k], lam, labels)


def reference_values(reference: str):
    try:
        return TABLE1_REFERENCES[reference]
    except KeyError:
        raise InvalidArgument(f"reference must be one of {sorted(TABLE1_REFERENCES)}, got {reference!r}") from None


def lookup_reference(alpha: float, reference: str, atol=1e-9) -> float:
    values = reference_values(reference)
    for a, v in zip(TABLE1_ALPHAS, values):
        if abs(a - alpha) <= atol:
            return v
    raise ReferenceMissing(f"no {reference} reference for alpha={alpha:g}; "
                           f"available: {', '.join(f'{a:g}' for a in TABLE1_ALPHAS)}")


@dataclass(frozen=True)
class ReferenceRow:
    alpha: float
    omega_bar: float
    reference: float
    relative_error: float


def reference_report(frequencies, reference="paper"):
    """Compare fundamentals against stored SS-C-SS-C reference values.

    ``frequencies`` is a mapping or sequence of ``(alpha, omega_bar)`` pairs.
    """
    items = list(frequencies.items()) if isinstance(frequencies, dict) else list(frequencies)
    if not items:
        raise InvalidArgument("no frequencies to compare")
    rows = []
    for alpha, omega in items:
        ref = lookup_reference(alpha, reference)
        rows.append(ReferenceRow(float(alpha), float(omega), ref, (omega - ref) / ref))
    return rows


def navier_frequencies(alpha, count=6, modes=6):
    """Exact SS-SS-SS-SS frequencies ``pi^2 (m^2 + n^2 alpha^2)``, ascending."""
    vals = sorted(np.pi ** 2 * (i * i + j * j * alpha * alpha)
                  for i in range(1, modes + 1) for j in range(1, modes + 1))
    return np.array(vals[:count])
