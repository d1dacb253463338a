import numpy as np
import pytest

from csimrec.transforms import (
    build_overcomplete_dct,
    dct2d,
    idct2d,
    operator_norm_sq,
)


class TestDictionary:
    def test_shape_and_column_norms(self):
        d = build_overcomplete_dct(64, 128)
        assert d.atoms.shape == (64, 128)
        norms = np.linalg.norm(d.atoms, axis=0)
        np.testing.assert_allclose(norms, 1.0, rtol=0, atol=1e-12)

    def test_first_atom_is_constant(self):
        d = build_overcomplete_dct(64, 128)
        np.testing.assert_allclose(d.atoms[:, 0], 1.0 / 8.0, atol=1e-15)

    def test_square_without_mean_removal_is_orthonormal(self):
        d = build_overcomplete_dct(64, 64, remove_mean=False)
        gram = d.atoms.T @ d.atoms
        np.testing.assert_allclose(gram, np.eye(64), atol=1e-10)

    def test_lambda_cached_and_bounded(self):
        d = build_overcomplete_dct(64, 128)
        assert d.lam_sq >= 1.0
        dense = np.linalg.eigvalsh(d.atoms.T @ d.atoms).max()
        assert d.lam_sq == pytest.approx(dense, abs=1e-6)

    def test_too_few_atoms(self):
        with pytest.raises(ValueError):
            build_overcomplete_dct(64, 63)


class TestOperatorNorm:
    def test_orthonormal_basis(self):
        d = build_overcomplete_dct(32, 32, remove_mean=False)
        assert operator_norm_sq(d) == pytest.approx(1.0, abs=1e-8)

    def test_stacked_identity(self):
        mat = np.hstack([np.eye(16), np.eye(16)])
        assert operator_norm_sq(mat) == pytest.approx(2.0, abs=1e-8)

    def test_matches_dense_eigensolver(self, rng):
        mat = rng.normal(size=(20, 35))
        dense = np.linalg.eigvalsh(mat.T @ mat).max()
        assert operator_norm_sq(mat) == pytest.approx(dense, rel=1e-6)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            operator_norm_sq(np.zeros((0, 0)))


class TestDct2d:
    def test_constant_image_is_dc_only(self):
        n1, n2, c = 8, 12, 3.25
        coeff = dct2d(np.full((n1, n2), c))
        expected = np.zeros((n1, n2))
        expected[0, 0] = c * np.sqrt(n1 * n2)
        np.testing.assert_allclose(coeff, expected, atol=1e-12)

    def test_round_trip(self, rng):
        x = rng.normal(size=(16, 16))
        np.testing.assert_allclose(idct2d(dct2d(x)), x, rtol=0, atol=1e-10)

    def test_round_trip_large(self, rng):
        x = rng.normal(size=(256, 256))
        assert np.abs(idct2d(dct2d(x)) - x).max() <= 1e-10

    def test_parseval(self, rng):
        x = rng.normal(size=(40, 56))
        assert np.linalg.norm(dct2d(x)) == pytest.approx(
            np.linalg.norm(x), rel=1e-12
        )

    def test_linearity(self, rng):
        x = rng.normal(size=(9, 7))
        y = rng.normal(size=(9, 7))
        a, b = 2.5, -0.7
        for t in (dct2d, idct2d):
            np.testing.assert_allclose(
                t(a * x + b * y), a * t(x) + b * t(y), atol=1e-12
            )

    def test_rejects_non_2d(self):
        with pytest.raises(ValueError):
            dct2d(np.zeros(8))
        with pytest.raises(ValueError):
            idct2d(np.zeros((2, 2, 2)))
