import json

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from hdq_centro.centro import (SKEW_SYMMETRIC, SYMMETRIC, StructureClass, apply_reversal,
                               build_symmetry_basis, classify, closure_check, eig_centro,
                               eig_dense, eig_skew, match_spectra, project, random_structured,
                               reduced_centro, reduced_skew, reversal_matrix, split_blocks,
                               symmetric_basis_blocks, vector_symmetry)
from hdq_centro.errors import InvalidArgument, SingularSystem, StructureError
from hdq_centro.grid import uniform_grid
from hdq_centro.hdq import weights

PI = np.pi
Q3 = np.array([[2.0, 1.0, 0.0], [1.0, 3.0, 1.0], [0.0, 1.0, 2.0]])
W1 = np.array(weights(uniform_grid(3), 1).W)
W2 = np.array(weights(uniform_grid(3), 2).W)

odd_sizes = st.sampled_from([1, 3, 5, 7, 9, 11, 13, 15, 17, 19, 21])
finite = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)


def structured(n, parity):
    return arrays(float, (n, n), elements=finite).map(lambda a: project(a, parity))


# Spectral comparisons need generic (non-defective) matrices; adversarial
# element draws produce Jordan blocks whose eigenvalues are only defined to
# about eps**(1/k).
generic = st.tuples(odd_sizes, st.integers(0, 2**32 - 1))


def charpoly_roots(q):
    """Eigenvalues from the exact characteristic polynomial of a rational matrix."""
    lam = sp.Symbol("lam")
    poly = sp.Matrix(np.asarray(q).tolist()).applyfunc(sp.nsimplify).charpoly(lam)
    return np.array([complex(r) for r in sp.Poly(poly, lam).nroots(n=30)])


# -- J algebra ----------------------------------------------------------------

def test_reversal_examples():
    np.testing.assert_array_equal(apply_reversal(np.eye(3), "both"), np.eye(3))
    np.testing.assert_array_equal(apply_reversal([1, 2, 3]), [3, 2, 1])
    j = reversal_matrix(4)
    np.testing.assert_array_equal(j.T, j)
    np.testing.assert_array_equal(j @ j, np.eye(4))
    with pytest.raises(InvalidArgument):
        apply_reversal([1, 2], "right")


@given(st.integers(1, 8).flatmap(lambda n: arrays(float, (n, n + 1), elements=finite)))
def test_reversal_matches_explicit_j(x):
    jl = reversal_matrix(x.shape[0])
    jr = reversal_matrix(x.shape[1])
    np.testing.assert_array_equal(apply_reversal(x, "left"), jl @ x)
    np.testing.assert_array_equal(apply_reversal(x, "right"), x @ jr)
    np.testing.assert_array_equal(apply_reversal(x, "both"), jl @ x @ jr)
    for side in ("left", "right", "both"):
        np.testing.assert_array_equal(apply_reversal(apply_reversal(x, side), side), x)


def test_vector_symmetry_examples():
    assert vector_symmetry([1, 0, 1]) == "symmetric"
    assert vector_symmetry([1, 0, -1]) == "skew"
    assert vector_symmetry([1, 2, 3]) == "neither"


# -- block partitions ---------------------------------------------------------

def test_split_blocks_centro_example():
    b = split_blocks(Q3, "centro")
    assert b.A.tolist() == [[2.0]] and b.C.tolist() == [[0.0]]
    assert b.s.tolist() == [1.0] and b.t.tolist() == [1.0] and b.q == 3.0
    np.testing.assert_array_equal(b.assemble(), Q3)


def test_split_blocks_skew_example():
    b = split_blocks(W1, "skew")
    np.testing.assert_allclose(b.A, [[-PI / 2]])
    np.testing.assert_allclose(b.C, [[PI / 2]])
    np.testing.assert_allclose(b.s, [-PI])
    np.testing.assert_allclose(b.t, [-PI / 2])
    assert b.q == 0.0
    np.testing.assert_allclose(b.assemble(), W1, atol=1e-14)


def test_split_blocks_parity_mismatch():
    with pytest.raises(StructureError):
        split_blocks(Q3, "skew")
    with pytest.raises(StructureError):
        split_blocks(W1, "centro")
    with pytest.raises(InvalidArgument):
        split_blocks(np.eye(4), "centro")


@given(odd_sizes.flatmap(lambda n: st.tuples(structured(n, "centro"), structured(n, "skew"))))
def test_split_round_trip_exact(pair):
    qc, qs = pair
    np.testing.assert_array_equal(split_blocks(qc, "centro").assemble(), qc)
    np.testing.assert_array_equal(split_blocks(qs, "skew").assemble(), qs)
    assert split_blocks(qs, "skew").q == 0.0


# -- centrosymmetric reduction ------------------------------------------------

def test_reduced_centro_example():
    skew_block, sym_block = reduced_centro(Q3)
    np.testing.assert_array_equal(skew_block, [[2.0]])
    np.testing.assert_array_equal(sym_block, [[3.0, 2.0], [1.0, 2.0]])
    union = np.sort(np.concatenate([np.linalg.eigvals(skew_block), np.linalg.eigvals(sym_block)]).real)
    np.testing.assert_allclose(union, [1.0, 2.0, 4.0])
    # (2 - lam)(lam^2 - 5 lam + 4)
    np.testing.assert_allclose(np.sort(charpoly_roots(Q3).real), [1.0, 2.0, 4.0])


def test_reduced_centro_identity():
    a, b = reduced_centro(np.eye(5))
    np.testing.assert_array_equal(a, np.eye(2))
    np.testing.assert_array_equal(b, np.eye(3))


def test_eig_centro_example():
    spec = eig_centro(Q3)
    i = int(np.argmin(np.abs(spec.eigenvalues - 2.0)))
    assert spec.labels[i] == SKEW_SYMMETRIC
    v = spec.eigenvectors[:, i]
    np.testing.assert_allclose(np.abs(v), [1 / np.sqrt(2), 0, 1 / np.sqrt(2)], atol=1e-14)
    assert v[0] == pytest.approx(-v[2])
    assert set(spec.labels) == {SYMMETRIC, SKEW_SYMMETRIC}


def test_eig_centro_identity():
    spec = eig_centro(np.eye(3))
    np.testing.assert_allclose(spec.eigenvalues, 1.0)
    assert np.max(spec.residuals(np.eye(3))) <= 1e-15


def test_eig_centro_random_residuals(rng):
    for _ in range(20):
        q = random_structured(9, "centro", rng)
        spec = eig_centro(q)
        assert np.max(spec.residuals(q)) <= 1e-9
        for v, lab in zip(spec.eigenvectors.T, spec.labels):
            assert vector_symmetry(v, 1e-12) == ("symmetric" if lab == SYMMETRIC else "skew")


@given(generic)
def test_reduced_centro_matches_dense(draw):
    n, seed = draw
    q = random_structured(n, "centro", seed)
    spec = eig_centro(q, vectors=False)
    scale = max(np.linalg.norm(q, 2), 1e-300)
    assert match_spectra(spec, eig_dense(q)) <= 1e-8 * scale + 1e-300


# -- skew-centrosymmetric reduction -------------------------------------------

def test_reduced_skew_example_symbolic():
    s_map, t_map = reduced_skew(W1)
    ts = t_map @ s_map
    # Compose the two maps exactly: S = [-Js | A - JC], T = [2t ; A + JC].
    a, c, s, t = -sp.pi / 2, sp.pi / 2, -sp.pi, -sp.pi / 2
    s_exact = sp.Matrix([[-s, a - c]])
    t_exact = sp.Matrix([[2 * t], [a + c]])
    ts_exact = np.array((t_exact * s_exact).evalf(20).tolist(), dtype=float)
    np.testing.assert_allclose(ts, ts_exact, atol=1e-13)
    np.testing.assert_allclose(ts, [[-PI ** 2, PI ** 2], [0, 0]], atol=1e-13)
    lam = eig_skew(W1).eigenvalues
    assert match_spectra(lam, [1j * PI, -1j * PI, 0]) <= 1e-12
    assert match_spectra(lam, eig_dense(W1, backend="qr")) <= 1e-12


def test_eig_skew_small_example():
    q = np.array([[0.0, 0.0, 1.0], [0.0, 0.0, 0.0], [-1.0, 0.0, 0.0]])
    assert classify(q) is StructureClass.SKEW
    assert match_spectra(eig_skew(q), [1j, -1j, 0]) <= 1e-14
    assert match_spectra(eig_dense(q), charpoly_roots(q)) <= 1e-14


@given(generic)
def test_skew_spectrum_symmetric_under_negation(draw):
    n, seed = draw
    q = random_structured(n, "skew", seed)
    lam = eig_dense(q).eigenvalues
    scale = max(np.linalg.norm(q, 2), 1.0)
    assert match_spectra(lam, -lam) <= 1e-8 * scale
    assert np.min(np.abs(lam)) <= 1e-8 * scale


def test_eig_skew_vectors_from_dense(rng):
    q = random_structured(7, "skew", rng)
    spec = eig_skew(q, vectors=True)
    assert np.max(spec.residuals(q)) <= 1e-9


# -- symmetry basis -----------------------------------------------------------

def test_symmetry_basis_n3():
    r = 1 / np.sqrt(2)
    np.testing.assert_allclose(build_symmetry_basis(3), [[r, 0, r], [0, 1, 0], [-r, 0, r]])


@pytest.mark.parametrize("n", range(1, 22, 2))
def test_symmetry_basis_orthogonal(n):
    k = build_symmetry_basis(n)
    np.testing.assert_allclose(k.T @ k, np.eye(n), atol=1e-14)


@pytest.mark.parametrize("n", [3, 7, 13])
def test_symmetry_basis_block_structure(n, rng):
    m = n // 2
    k = build_symmetry_basis(n)
    qc = random_structured(n, "centro", rng)
    t = k.T @ qc @ k
    scale = np.linalg.norm(qc, 2)
    assert np.max(np.abs(t[:m, m:])) <= 1e-12 * scale
    assert np.max(np.abs(t[m:, :m])) <= 1e-12 * scale
    skew_block, sym_block = symmetric_basis_blocks(qc)
    np.testing.assert_allclose(t[:m, :m], skew_block, atol=1e-12 * scale)
    np.testing.assert_allclose(t[m:, m:], sym_block, atol=1e-12 * scale)

    qs = random_structured(n, "skew", rng)
    t = k.T @ qs @ k
    scale = np.linalg.norm(qs, 2)
    assert np.max(np.abs(t[:m, :m])) <= 1e-12 * scale
    assert np.max(np.abs(t[m:, m:])) <= 1e-12 * scale
    s_map, t_map = reduced_skew(qs)
    # Same maps up to the sqrt(2) rescaling of the centre coordinate.
    d = np.ones(m + 1)
    d[0] = np.sqrt(2)
    np.testing.assert_allclose(t[:m, m:], s_map @ np.diag(d), atol=1e-12 * scale)
    np.testing.assert_allclose(t[m:, :m], np.diag(1 / d) @ t_map, atol=1e-12 * scale)


# -- dense baseline -----------------------------------------------------------

@pytest.mark.parametrize("backend", ["lapack", "qr"])
def test_eig_dense_examples(backend):
    np.testing.assert_allclose(np.sort(eig_dense(np.diag([3.0, 1.0, 2.0]), backend=backend).eigenvalues.real),
                               [1, 2, 3])
    np.testing.assert_allclose(np.sort(eig_dense([[0.0, 1.0], [1.0, 0.0]], backend=backend).eigenvalues.real),
                               [-1, 1])
    np.testing.assert_allclose(np.sort(eig_dense(Q3, backend=backend).eigenvalues.real), [1, 2, 4], atol=1e-14)


@pytest.mark.parametrize("backend", ["lapack", "qr"])
def test_eig_dense_vectors(backend, rng):
    q = rng.standard_normal((8, 8))
    spec = eig_dense(q, vectors=True, backend=backend)
    assert np.max(spec.residuals(q)) <= 1e-9


def test_eig_dense_rejects_non_square():
    with pytest.raises(InvalidArgument):
        eig_dense(np.ones((2, 3)))
    with pytest.raises(InvalidArgument):
        eig_dense(np.eye(2), backend="magic")


# -- closure laws ---------------------------------------------------------------

def test_closure_identity():
    z = np.array([[0, 0, 1.0], [0, 0, 0], [-1.0, 0, 0]])
    report = closure_check(np.eye(3), np.eye(3), z)
    assert report.max_residual == 0.0
    assert "Z^-1" not in report.residuals


def test_closure_hdq_product():
    report = closure_check(W2, W2, W1, inverses=False)
    assert classify(W2 @ W1) is StructureClass.SKEW
    assert report.residuals["XZ"] <= 1e-14


@pytest.mark.parametrize("n", [6, 7, 8])
def test_closure_random(n, rng):
    x = random_structured(n, "centro", rng) + n * np.eye(n)
    y = random_structured(n, "centro", rng)
    z = random_structured(n, "skew", rng)
    report = closure_check(x, y, z)
    assert report.ok(1e-12)
    assert ("Z^-1" in report.residuals) == (n % 2 == 0)


def test_closure_singular():
    with pytest.raises(SingularSystem):
        closure_check(np.zeros((4, 4)), np.eye(4), np.fliplr(np.diag([1.0, 1.0, -1.0, -1.0])))


def test_kronecker_closure(rng):
    a = random_structured(3, "centro", rng)
    b = random_structured(5, "centro", rng)
    assert classify(np.kron(a, b), 1e-14) is StructureClass.CENTRO


def test_spectrum_json():
    spec = eig_centro(Q3)
    data = json.loads(spec.sorted().to_json(Q3))
    assert [e["re"] for e in data["eigenvalues"]] == [1.0, 2.0, 4.0]
    assert data["eigenvalues"][1]["label"] == SKEW_SYMMETRIC
    assert data["residual_max"] <= 1e-12
