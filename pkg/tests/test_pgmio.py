import numpy as np
import pytest

from csimrec.pgmio import (
    MaskFormatError,
    PgmError,
    read_mask,
    read_pgm,
    write_mask,
    write_pgm,
)
from csimrec.solver2d import Mask2D


class TestReadWrite:
    def test_binary_round_trip(self, tmp_path, rng):
        img = rng.integers(0, 256, size=(17, 23)).astype(float)
        path = tmp_path / "img.pgm"
        write_pgm(img, path)
        np.testing.assert_array_equal(read_pgm(path), img)

    def test_ascii_round_trip(self, tmp_path, rng):
        img = rng.integers(0, 256, size=(5, 9)).astype(float)
        path = tmp_path / "img.pgm"
        write_pgm(img, path, binary=False)
        np.testing.assert_array_equal(read_pgm(path), img)

    def test_p2_and_p5_agree(self, tmp_path, rng):
        img = rng.integers(0, 256, size=(8, 8)).astype(float)
        write_pgm(img, tmp_path / "b.pgm", binary=True)
        write_pgm(img, tmp_path / "a.pgm", binary=False)
        np.testing.assert_array_equal(
            read_pgm(tmp_path / "a.pgm"), read_pgm(tmp_path / "b.pgm")
        )

    def test_minimal_binary_header(self, tmp_path):
        payload = bytes(range(16))
        (tmp_path / "m.pgm").write_bytes(b"P5 4 4 255\n" + payload)
        img = read_pgm(tmp_path / "m.pgm")
        assert img.shape == (4, 4)
        np.testing.assert_array_equal(img.ravel(), np.arange(16, dtype=float))

    def test_header_comments_skipped(self, tmp_path):
        (tmp_path / "c.pgm").write_bytes(
            b"P2\n# a comment\n2 2\n# another\n255\n0 1\n2 3\n"
        )
        img = read_pgm(tmp_path / "c.pgm")
        np.testing.assert_array_equal(img, [[0, 1], [2, 3]])

    def test_write_clamps_and_rounds(self, tmp_path):
        img = np.array([[-3.0, 0.4], [254.6, 300.0]])
        path = tmp_path / "q.pgm"
        write_pgm(img, path)
        np.testing.assert_array_equal(read_pgm(path), [[0, 0], [255, 255]])

    def test_write_rejects_non_finite(self, tmp_path):
        with pytest.raises(ValueError):
            write_pgm(np.array([[np.nan, 1.0]]), tmp_path / "x.pgm")


class TestParseErrors:
    def test_bad_magic(self, tmp_path):
        (tmp_path / "x.pgm").write_bytes(b"P6 2 2 255\n" + bytes(12))
        with pytest.raises(PgmError) as exc:
            read_pgm(tmp_path / "x.pgm")
        assert exc.value.offset == 0

    def test_truncated_raster_offset(self, tmp_path):
        (tmp_path / "x.pgm").write_bytes(b"P5 4 4 255\n" + bytes(10))
        with pytest.raises(PgmError) as exc:
            read_pgm(tmp_path / "x.pgm")
        assert "truncated" in str(exc.value)
        assert exc.value.offset == 11 + 10

    def test_unsupported_maxval(self, tmp_path):
        (tmp_path / "x.pgm").write_bytes(b"P5 2 2 65535\n" + bytes(8))
        with pytest.raises(PgmError) as exc:
            read_pgm(tmp_path / "x.pgm")
        assert "maxval" in str(exc.value)

    def test_non_integer_dimension(self, tmp_path):
        (tmp_path / "x.pgm").write_bytes(b"P5 four 4 255\n" + bytes(16))
        with pytest.raises(PgmError):
            read_pgm(tmp_path / "x.pgm")

    def test_ascii_sample_out_of_range(self, tmp_path):
        (tmp_path / "x.pgm").write_bytes(b"P2 2 1 100\n5 101\n")
        with pytest.raises(PgmError):
            read_pgm(tmp_path / "x.pgm")

    def test_empty_file(self, tmp_path):
        (tmp_path / "x.pgm").write_bytes(b"")
        with pytest.raises(PgmError):
            read_pgm(tmp_path / "x.pgm")

    def test_p5_sample_above_maxval(self, tmp_path):
        (tmp_path / "x.pgm").write_bytes(b"P5 2 1 100\n" + bytes([5, 200]))
        with pytest.raises(PgmError):
            read_pgm(tmp_path / "x.pgm")


class TestMaskIo:
    def test_round_trip(self, tmp_path, rng):
        grid = (rng.uniform(size=(9, 7)) < 0.5).astype(float)
        mask = Mask2D(grid=grid)
        path = tmp_path / "m.pgm"
        write_mask(mask, path)
        np.testing.assert_array_equal(read_mask(path).grid, grid)

    def test_all_observed(self, tmp_path):
        write_pgm(np.full((4, 4), 255.0), tmp_path / "m.pgm")
        assert read_mask(tmp_path / "m.pgm").m == 16

    def test_mixed_values_rejected(self, tmp_path):
        write_pgm(np.array([[0.0, 255.0], [128.0, 0.0]]), tmp_path / "m.pgm")
        with pytest.raises(MaskFormatError):
            read_mask(tmp_path / "m.pgm")
