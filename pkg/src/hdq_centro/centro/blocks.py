"""Block partitions of odd-order (skew-)centrosymmetric matrices.

With ``N = 2M + 1`` a centrosymmetric ``Q`` reads

    [[A,  Js, JCJ],
     [t,  q,  tJ ],
     [C,  s,  JAJ]]

and a skew-centrosymmetric one

    [[A, -Js, -JCJ],
     [t,  0,  -tJ ],
     [C,  s,  -JAJ]]
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import InvalidArgument, StructureError
from .algebra import DEFAULT_CLASSIFY_TOL, StructureClass, classify

_PARITY_CLASS = {"centro": StructureClass.CENTRO, "skew": StructureClass.SKEW}


@dataclass(frozen=True)
class CentroBlocks:
    A: np.ndarray
    C: np.ndarray
    s: np.ndarray
    t: np.ndarray
    q: float
    parity: str

    @property
    def m(self) -> int:
        return self.A.shape[0]

    def assemble(self) -> np.ndarray:
        A, C, s, t = self.A, self.C, self.s, self.t
        sign = 1.0 if self.parity == "centro" else -1.0
        m = self.m
        n = 2 * m + 1
        q = np.zeros((n, n), dtype=np.result_type(A, C, s, t, float))
        q[:m, :m] = A
        q[:m, m] = sign * s[::-1]
        q[:m, m + 1:] = sign * C[::-1, ::-1]
        q[m, :m] = t
        q[m, m] = self.q
        q[m, m + 1:] = sign * t[::-1]
        q[m + 1:, :m] = C
        q[m + 1:, m] = s
        q[m + 1:, m + 1:] = sign * A[::-1, ::-1]
        return q


def _half(q):
    q = np.asarray(q)
    if q.ndim != 2 or q.shape[0] != q.shape[1]:
        raise InvalidArgument(f"expected a square matrix, got shape {q.shape}")
    n = q.shape[0]
    if n % 2 == 0:
        raise InvalidArgument(f"block partition needs odd order, got N={n}")
    return n // 2


def _require(q, parity, tol):
    if parity not in _PARITY_CLASS:
        raise InvalidArgument(f"parity must be 'centro' or 'skew', got {parity!r}")
    found = classify(q, tol)
    # A zero matrix is both; accept it for either parity.
    if found is not _PARITY_CLASS[parity] and not (parity == "skew" and not np.any(q)):
        raise StructureError(f"matrix classifies as {found}, expected {_PARITY_CLASS[parity]}")


def split_blocks(q, parity="centro", tol=DEFAULT_CLASSIFY_TOL) -> CentroBlocks:
    """Read off ``(A, C, s, t, q)`` from an odd-order structured matrix."""
    m = _half(q)
    _require(q, parity, tol)
    q = np.asarray(q)
    center = q[m, m] if parity == "centro" else 0.0
    return CentroBlocks(
        A=q[:m, :m].copy(),
        C=q[m + 1:, :m].copy(),
        s=q[m + 1:, m].copy(),
        t=q[m, :m].copy(),
        q=float(center),
        parity=parity,
    )


def reduced_centro(q, tol=DEFAULT_CLASSIFY_TOL):
    """Split a centrosymmetric matrix into its skew and symmetric invariant blocks.

    Returns ``(A - JC, [[q, 2t], [Js, A + JC]])``. The second block acts on
    coordinates ``(alpha, y)`` of the symmetric vector ``(y, alpha, Jy)``, the
    first on ``x`` of the skew vector ``(x, 0, -Jx)``.
    """
    b = split_blocks(q, "centro", tol)
    jc = b.C[::-1]
    skew_block = b.A - jc
    m = b.m
    sym_block = np.empty((m + 1, m + 1), dtype=skew_block.dtype)
    sym_block[0, 0] = b.q
    sym_block[0, 1:] = 2.0 * b.t
    sym_block[1:, 0] = b.s[::-1]
    sym_block[1:, 1:] = b.A + jc
    return skew_block, sym_block


def reduced_skew(q, tol=DEFAULT_CLASSIFY_TOL):
    """Off-diagonal maps of a skew-centrosymmetric matrix in the symmetry basis.

    Returns ``(S, T)`` with ``S`` (M x (M+1)) sending symmetric coordinates
    ``(alpha, y)`` to skew coordinates and ``T`` ((M+1) x M) the converse. The
    square of ``Q`` restricted to the symmetric subspace is ``T @ S``.
    """
    b = split_blocks(q, "skew", tol)
    jc = b.C[::-1]
    m = b.m
    s_map = np.empty((m, m + 1), dtype=b.A.dtype)
    s_map[:, 0] = -b.s[::-1]
    s_map[:, 1:] = b.A - jc
    t_map = np.empty((m + 1, m), dtype=b.A.dtype)
    t_map[0] = 2.0 * b.t
    t_map[1:] = b.A + jc
    return s_map, t_map


def build_symmetry_basis(n: int) -> np.ndarray:
    """Orthogonal ``K`` whose columns are M skew vectors, the center unit vector,
    then M symmetric vectors.

    ``K.T @ Q @ K`` is block diagonal (sizes M, M+1) for centrosymmetric ``Q``
    and block anti-diagonal for skew-centrosymmetric ``Q``.
    """
    if int(n) != n or n < 1 or n % 2 == 0:
        raise InvalidArgument(f"symmetry basis needs odd N, got {n}")
    m = n // 2
    k = np.zeros((n, n))
    r = 1.0 / np.sqrt(2.0)
    idx = np.arange(m)
    k[idx, idx] = r
    k[n - 1 - idx, idx] = -r
    k[m, m] = 1.0
    k[idx, m + 1 + idx] = r
    k[n - 1 - idx, m + 1 + idx] = r
    return k


def symmetric_basis_blocks(q, tol=DEFAULT_CLASSIFY_TOL):
    """Orthonormal-coordinate blocks ``(skew, sym)`` of a centrosymmetric matrix.

    Unlike :func:`reduced_centro` these equal the diagonal blocks of
    ``K.T @ Q @ K`` exactly, so similarity transforms compose across axes.
    """
    skew_block, sym_block = reduced_centro(q, tol)
    r2 = np.sqrt(2.0)
    sym_block = sym_block.copy()
    sym_block[0, 1:] /= r2
    sym_block[1:, 0] *= r2
    return skew_block, sym_block
