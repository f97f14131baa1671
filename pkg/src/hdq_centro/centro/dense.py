"""Eigenvalues of a general real matrix by balancing, Householder reduction to
upper Hessenberg form and implicit double-shift (Francis) QR.

Written in plain numpy so that it shares no code with LAPACK's ``geev`` and
can act as an independent oracle for the structured solvers.
"""

from __future__ import annotations

import numpy as np

from ..errors import ConvergenceError, InvalidArgument

_EPS = np.finfo(float).eps


def balance(a):
    """Parlett-Reinsch balancing with radix 2; returns ``(B, d)`` with ``B = D^-1 A D``."""
    a = np.array(a, dtype=float)
    n = a.shape[0]
    d = np.ones(n)
    converged = False
    while not converged:
        converged = True
        for i in range(n):
            c = np.sum(np.abs(a[:, i])) - abs(a[i, i])
            r = np.sum(np.abs(a[i, :])) - abs(a[i, i])
            if c == 0.0 or r == 0.0:
                continue
            g = r / 2.0
            f = 1.0
            s = c + r
            while c < g:
                f *= 2.0
                c *= 4.0
            g = r * 2.0
            while c > g:
                f /= 2.0
                c /= 4.0
            if (c + r) / f < 0.95 * s:
                converged = False
                d[i] *= f
                a[i, :] /= f
                a[:, i] *= f
    return a, d


def _house(x):
    v = np.array(x, dtype=float)
    size = np.max(np.abs(v))
    if size == 0.0:
        return v, 0.0
    # The reflector is scale free; normalizing keeps v @ v representable.
    v /= size
    v[0] += np.copysign(np.linalg.norm(v), v[0])
    return v, 2.0 / (v @ v)


def hessenberg(a):
    """Householder reduction ``H = Q^T A Q`` with ``H`` upper Hessenberg (``Q`` not formed)."""
    h = np.array(a, dtype=float)
    n = h.shape[0]
    for k in range(n - 2):
        v, beta = _house(h[k + 1:, k])
        if beta == 0.0:
            continue
        h[k + 1:, k:] -= beta * np.outer(v, v @ h[k + 1:, k:])
        h[:, k + 1:] -= beta * np.outer(h[:, k + 1:] @ v, v)
        h[k + 2:, k] = 0.0
    return h


def _eig2(a, b, c, d):
    p = 0.5 * (a - d)
    disc = p * p + b * c
    mid = 0.5 * (a + d)
    if disc >= 0.0:
        r = np.sqrt(disc)
        l1 = mid + np.copysign(r, mid)
        # Trace-preserving second root: absolute error stays at eps * |block|.
        return complex(l1), complex((a + d) - l1)
    r = np.sqrt(-disc)
    return complex(mid, r), complex(mid, -r)


def _francis_step(h, lo, hi, exceptional=False):
    """One implicit double-shift sweep on the active window ``h[lo:hi+1, lo:hi+1]``."""
    w = h[lo:hi + 1, lo:hi + 1]
    m = w.shape[0]
    # The first column of the double-shift polynomial is homogeneous of degree
    # two; evaluating it on the window scaled to unit size avoids underflow.
    ws = np.max(np.abs(w))
    u = w / ws
    if exceptional:
        omega = abs(u[m - 1, m - 2]) + abs(u[m - 2, m - 3])
        s = 1.5 * omega
        t = omega * omega
    else:
        s = u[m - 2, m - 2] + u[m - 1, m - 1]
        t = u[m - 2, m - 2] * u[m - 1, m - 1] - u[m - 2, m - 1] * u[m - 1, m - 2]
    x = u[0, 0] * u[0, 0] + u[0, 1] * u[1, 0] - s * u[0, 0] + t
    y = u[1, 0] * (u[0, 0] + u[1, 1] - s)
    z = u[1, 0] * u[2, 1]
    for k in range(m - 2):
        v, beta = _house([x, y, z])
        if beta != 0.0:
            q = max(0, k - 1)
            w[k:k + 3, q:] -= beta * np.outer(v, v @ w[k:k + 3, q:])
            r = min(k + 4, m)
            w[:r, k:k + 3] -= beta * np.outer(w[:r, k:k + 3] @ v, v)
        x = w[k + 1, k]
        y = w[k + 2, k]
        if k < m - 3:
            z = w[k + 3, k]
    v, beta = _house([x, y])
    if beta != 0.0:
        w[m - 2:, m - 3:] -= beta * np.outer(v, v @ w[m - 2:, m - 3:])
        w[:, m - 2:] -= beta * np.outer(w[:, m - 2:] @ v, v)
    # Clear bulge remnants below the subdiagonal.
    w[np.tril_indices(m, -2)] = 0.0


def hqr_eigenvalues(a, max_iter_per_eig=60, do_balance=True):
    """All eigenvalues of a real square matrix, complex dtype, unordered.

    Raises :class:`ConvergenceError` (carrying the iteration count and the size
    of the unreduced window) if an eigenvalue fails to deflate.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidArgument(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if n == 0:
        return np.zeros(0, dtype=complex)
    if not np.all(np.isfinite(a)):
        raise InvalidArgument("matrix contains non-finite entries")
    # Work at unit scale so shifts and products cannot underflow or overflow.
    scale = np.max(np.abs(a))
    if scale == 0.0:
        return np.zeros(n, dtype=complex)
    a = a / scale
    if do_balance:
        a, _ = balance(a)
    h = hessenberg(a)
    norm = np.max(np.abs(h)) or 1.0
    eigs = []
    hi = n - 1
    its = 0
    while hi >= 0:
        lo = hi
        while lo > 0:
            s = abs(h[lo - 1, lo - 1]) + abs(h[lo, lo])
            if s == 0.0:
                s = norm
            if abs(h[lo, lo - 1]) <= _EPS * s:
                h[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            eigs.append(complex(h[hi, hi]))
            hi -= 1
            its = 0
        elif lo == hi - 1:
            eigs.extend(_eig2(h[hi - 1, hi - 1], h[hi - 1, hi], h[hi, hi - 1], h[hi, hi]))
            hi -= 2
            its = 0
        else:
            its += 1
            if its > max_iter_per_eig:
                raise ConvergenceError(
                    f"QR iteration did not converge after {its - 1} sweeps "
                    f"(active window {hi - lo + 1}x{hi - lo + 1})",
                    iterations=its - 1, active_size=hi - lo + 1)
            _francis_step(h, lo, hi, exceptional=(its % 10 == 0))
    return scale * np.array(eigs[::-1], dtype=complex)


def inverse_iteration(a, lam, iterations=3, rng=0):
    """Unit eigenvector for an already computed eigenvalue ``lam``."""
    a = np.asarray(a)
    n = a.shape[0]
    scale = max(np.max(np.abs(a)), 1.0)
    shift = lam + (abs(lam) + scale) * 1e3 * _EPS
    m = a.astype(complex) - shift * np.eye(n)
    v = np.random.default_rng(rng).standard_normal(n).astype(complex)
    for _ in range(iterations):
        v = np.linalg.solve(m, v)
        v /= np.linalg.norm(v)
    return v
