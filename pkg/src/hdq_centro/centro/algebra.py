"""Reversal-operator algebra and structure classification.

``J`` is never formed: multiplying by it is a row or column reversal.
"""

from __future__ import annotations

import enum

import numpy as np

from ..errors import InvalidArgument

DEFAULT_CLASSIFY_TOL = 1e-10


class StructureClass(str, enum.Enum):
    CENTRO = "Centrosymmetric"
    SKEW = "SkewCentrosymmetric"
    NEITHER = "Neither"

    def __str__(self):
        return self.value


def apply_reversal(x, side="left"):
    """Multiply by the contra-identity: ``left`` is ``J x``, ``right`` is ``x J``,
    ``both`` is ``J x J``. Vectors only support ``left``."""
    x = np.asarray(x)
    if side == "left":
        return x[::-1].copy()
    if x.ndim != 2:
        raise InvalidArgument(f"side={side!r} requires a matrix")
    if side == "right":
        return x[:, ::-1].copy()
    if side == "both":
        return x[::-1, ::-1].copy()
    raise InvalidArgument(f"side must be left, right or both, got {side!r}")


def reversal_matrix(n):
    """Explicit ``J``; only for tests and documentation of the algebra."""
    return np.eye(n)[::-1].copy()


def vector_symmetry(x, tol=1e-12):
    """Return ``"symmetric"`` if ``Jx = x``, ``"skew"`` if ``Jx = -x``, else ``"neither"``.

    The tolerance is relative to ``max|x|``; the zero vector counts as symmetric.
    """
    x = np.asarray(x)
    scale = np.max(np.abs(x)) if x.size else 0.0
    rx = x[::-1]
    if np.max(np.abs(rx - x), initial=0.0) <= tol * scale:
        return "symmetric"
    if np.max(np.abs(rx + x), initial=0.0) <= tol * scale:
        return "skew"
    return "neither"


def structure_residuals(m):
    """Relative max-norm residuals ``(|JMJ - M|, |JMJ + M|) / |M|``."""
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InvalidArgument(f"expected a square matrix, got shape {m.shape}")
    scale = np.max(np.abs(m)) if m.size else 0.0
    r = m[::-1, ::-1]
    if scale == 0.0:
        return 0.0, 0.0
    return (float(np.max(np.abs(r - m)) / scale),
            float(np.max(np.abs(r + m)) / scale))


def classify(m, tol=DEFAULT_CLASSIFY_TOL) -> StructureClass:
    """Classify a square matrix as centrosymmetric, skew-centrosymmetric or neither.

    Ties, including the zero matrix, resolve to centrosymmetric.
    """
    centro_res, skew_res = structure_residuals(m)
    if centro_res <= tol:
        return StructureClass.CENTRO
    if skew_res <= tol:
        return StructureClass.SKEW
    return StructureClass.NEITHER


def project(m, parity):
    """Nearest matrix of the given parity: ``(M + JMJ)/2`` or ``(M - JMJ)/2``."""
    m = np.asarray(m, dtype=float)
    r = m[::-1, ::-1]
    if parity == "centro":
        return 0.5 * (m + r)
    if parity == "skew":
        return 0.5 * (m - r)
    raise InvalidArgument(f"parity must be 'centro' or 'skew', got {parity!r}")


def random_structured(n, parity, rng=None):
    """Gaussian random matrix projected onto the requested parity class."""
    rng = np.random.default_rng(rng)
    return project(rng.standard_normal((n, n)), parity)
