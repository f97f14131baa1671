"""Spectra of general and structured matrices.

The reduced solvers only ever factor the half-size blocks; eigenvectors of a
centrosymmetric matrix are rebuilt from block eigenvectors by mirroring.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from ..errors import InvalidArgument, SingularSystem
from .algebra import DEFAULT_CLASSIFY_TOL, structure_residuals
from .blocks import reduced_centro, reduced_skew
from .dense import hqr_eigenvalues, inverse_iteration

SYMMETRIC = "symmetric"
SKEW_SYMMETRIC = "skew-symmetric"
UNLABELED = "unlabeled"


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues with optional unit eigenvectors (as columns) and per-pair labels."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray | None = None
    labels: tuple | None = None

    def __len__(self):
        return len(self.eigenvalues)

    def residuals(self, q):
        """``|Qv - lambda v| / (|Q|_2 |v|)`` per eigenpair."""
        if self.eigenvectors is None:
            raise InvalidArgument("spectrum carries no eigenvectors")
        q = np.asarray(q)
        v = self.eigenvectors
        r = q @ v - v * self.eigenvalues[None, :]
        scale = np.linalg.norm(q, 2) * np.linalg.norm(v, axis=0)
        scale[scale == 0] = 1.0
        return np.linalg.norm(r, axis=0) / scale

    def sorted(self):
        order = np.lexsort((self.eigenvalues.imag, self.eigenvalues.real))
        vecs = None if self.eigenvectors is None else self.eigenvectors[:, order]
        labels = None if self.labels is None else tuple(self.labels[i] for i in order)
        return Spectrum(self.eigenvalues[order], vecs, labels)

    def to_dict(self, q=None):
        labels = self.labels or (UNLABELED,) * len(self)
        out = {
            "eigenvalues": [
                {"re": float(f"{z.real:.12g}"), "im": float(f"{z.imag:.12g}"), "label": lab}
                for z, lab in zip(self.eigenvalues, labels)
            ],
            "residual_max": None,
        }
        if q is not None and self.eigenvectors is not None:
            out["residual_max"] = float(f"{np.max(self.residuals(q)):.12g}")
        return out

    def to_json(self, q=None):
        return json.dumps(self.to_dict(q), indent=2)


def eig_dense(q, vectors=False, backend="lapack") -> Spectrum:
    """Full spectrum of a real square matrix.

    ``backend="qr"`` uses the in-package Hessenberg/Francis solver (eigenvectors
    by inverse iteration); ``"lapack"`` delegates to ``numpy.linalg``.
    """
    q = np.asarray(q, dtype=float)
    if q.ndim != 2 or q.shape[0] != q.shape[1]:
        raise InvalidArgument(f"expected a square matrix, got shape {q.shape}")
    if backend == "lapack":
        if vectors:
            w, v = np.linalg.eig(q)
            return Spectrum(w.astype(complex), v.astype(complex))
        return Spectrum(np.linalg.eigvals(q).astype(complex))
    if backend == "qr":
        w = hqr_eigenvalues(q)
        if not vectors:
            return Spectrum(w)
        v = np.column_stack([inverse_iteration(q, lam) for lam in w]) if len(w) else None
        return Spectrum(w, v)
    raise InvalidArgument(f"unknown eigensolver backend {backend!r}")


def _block_eig(b, vectors):
    if vectors:
        w, v = np.linalg.eig(b)
        return w.astype(complex), v.astype(complex)
    return np.linalg.eigvals(b).astype(complex), None


def eig_centro(q, vectors=True, tol=DEFAULT_CLASSIFY_TOL) -> Spectrum:
    """Spectrum of an odd-order centrosymmetric matrix from its two half-size blocks.

    Skew-symmetric eigenvectors are ``(x, 0, -Jx)`` and symmetric ones
    ``(y, alpha, Jy)``, both normalized.
    """
    skew_block, sym_block = reduced_centro(q, tol)
    m = skew_block.shape[0]
    wu, xu = _block_eig(skew_block, vectors)
    wv, yv = _block_eig(sym_block, vectors)
    eigenvalues = np.concatenate([wu, wv])
    labels = (SKEW_SYMMETRIC,) * m + (SYMMETRIC,) * (m + 1)
    if not vectors:
        return Spectrum(eigenvalues, None, labels)
    u = np.vstack([xu, np.zeros((1, m)), -xu[::-1]])
    v = np.vstack([yv[1:], yv[:1], yv[1:][::-1]])
    vecs = np.hstack([u, v])
    vecs /= np.linalg.norm(vecs, axis=0)
    return Spectrum(eigenvalues, vecs, labels)


def eig_skew(q, tol=DEFAULT_CLASSIFY_TOL, vectors=False) -> Spectrum:
    """Spectrum of an odd-order skew-centrosymmetric matrix.

    Eigenvalues come from the (M+1)-square product ``T @ S``: the structural
    zero eigenvalue of that product is dropped, each remaining ``mu`` yields
    ``+-sqrt(mu)``, and the odd order contributes one exact zero. Eigenvectors,
    when requested, come from the dense path.
    """
    s_map, t_map = reduced_skew(q, tol)
    mu = np.linalg.eigvals(t_map @ s_map).astype(complex)
    mu = np.delete(mu, np.argmin(np.abs(mu)))
    root = np.sqrt(mu)
    eigenvalues = np.concatenate([root, -root, [0.0 + 0.0j]])
    if vectors:
        return eig_dense(q, vectors=True)
    return Spectrum(eigenvalues)


def match_spectra(a, b):
    """Pair two eigenvalue multisets by minimum total distance; returns the
    largest paired distance."""
    a = np.asarray(getattr(a, "eigenvalues", a), dtype=complex)
    b = np.asarray(getattr(b, "eigenvalues", b), dtype=complex)
    if a.shape != b.shape:
        raise InvalidArgument(f"multisets differ in size: {a.size} vs {b.size}")
    if a.size == 0:
        return 0.0
    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


@dataclass(frozen=True)
class ClosureReport:
    """Relative structural residuals of the closure products; smaller is better."""

    residuals: dict

    @property
    def max_residual(self):
        return max(self.residuals.values())

    def ok(self, tol=1e-12):
        return self.max_residual <= tol


def _checked_inverse(m, name):
    cond = np.linalg.cond(m)
    if not np.isfinite(cond) or cond > 1.0 / np.finfo(float).eps:
        raise SingularSystem(f"{name} is singular (condition {cond:.3g})", condition=cond)
    return np.linalg.inv(m)


def closure_check(x, y, z, inverses=True) -> ClosureReport:
    """Check that XY, X+Y, X^-1 are centrosymmetric and XZ, Z^-1 skew-centrosymmetric.

    An odd-order skew-centrosymmetric matrix always has a zero eigenvalue, so
    ``Z^-1`` is only checked for even order.
    """
    x, y, z = (np.asarray(v, dtype=float) for v in (x, y, z))
    res = {
        "XY": structure_residuals(x @ y)[0],
        "X+Y": structure_residuals(x + y)[0],
        "XZ": structure_residuals(x @ z)[1],
    }
    if inverses:
        res["X^-1"] = structure_residuals(_checked_inverse(x, "X"))[0]
        if z.shape[0] % 2 == 0:
            res["Z^-1"] = structure_residuals(_checked_inverse(z, "Z"))[1]
    return ClosureReport(res)
