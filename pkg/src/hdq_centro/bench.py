"""Wall-time and operation-count comparison of dense vs reduced plate eigensolves."""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgument
from .plate import PlateSpec, assemble_plate, one_axis_blocks, two_axis_blocks

# Rough flop constant for a nonsymmetric eigenvalue-only solve (Hessenberg + QR).
EIG_FLOPS = 10.0


def eig_flops(n):
    return EIG_FLOPS * float(n) ** 3


@dataclass(frozen=True)
class BenchRow:
    n: int
    interior: int
    one_axis_dims: tuple
    two_axis_dims: tuple
    t_dense: float
    t_one_axis: float
    t_two_axis: float

    @property
    def speedup_one_axis(self):
        return self.t_dense / self.t_one_axis

    @property
    def speedup_two_axis(self):
        return self.t_dense / self.t_two_axis

    @property
    def ops_ratio_one_axis(self):
        return eig_flops(self.interior) / sum(eig_flops(d) for d in self.one_axis_dims)

    @property
    def ops_ratio_two_axis(self):
        return eig_flops(self.interior) / sum(eig_flops(d) for d in self.two_axis_dims)

    @property
    def ops_fraction_largest_block(self):
        """Cost of the largest two-axis block relative to the dense solve."""
        return eig_flops(max(self.two_axis_dims)) / eig_flops(self.interior)


def _median_time(fn, repetitions):
    times = []
    for _ in range(repetitions):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return float(np.median(times))


def bench_size(n, repetitions=3, bc="SS-SS-SS-SS", alpha=1.0) -> BenchRow:
    """Time the three eigensolve paths on one plate operator.

    Each reduced timing includes forming its blocks from already assembled
    operators; assembly itself is shared and excluded.
    """
    op = assemble_plate(PlateSpec.from_string(bc, alpha, n))
    one = one_axis_blocks(op)
    two = two_axis_blocks(op)

    t_dense = _median_time(lambda: np.linalg.eigvals(op.matrix), repetitions)
    t_one = _median_time(lambda: [np.linalg.eigvals(b.matrix) for b in one_axis_blocks(op)], repetitions)
    t_two = _median_time(lambda: [np.linalg.eigvals(b.matrix) for b in two_axis_blocks(op)], repetitions)
    return BenchRow(n, op.size, tuple(b.size for b in one), tuple(b.size for b in two),
                    t_dense, t_one, t_two)


def run_bench(sizes, repetitions=3, bc="SS-SS-SS-SS", alpha=1.0):
    sizes = list(sizes)
    if not sizes:
        raise InvalidArgument("no sizes given")
    if repetitions < 1:
        raise InvalidArgument(f"repetitions must be >= 1, got {repetitions}")
    for n in sizes:
        if int(n) != n or n < 5 or n % 2 == 0:
            raise InvalidArgument(f"bench sizes must be odd integers >= 5, got {n}")
    # Warm up BLAS/LAPACK so the first timed size is not penalized.
    np.linalg.eigvals(np.random.default_rng(0).standard_normal((32, 32)))
    return [bench_size(n, repetitions, bc, alpha) for n in sizes]
