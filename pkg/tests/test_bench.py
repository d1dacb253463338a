import io
import math

import numpy as np
import pytest

from csimrec.bench import (
    CSV_HEADER,
    ExperimentSpec,
    extract_patches,
    random_mask,
    random_mask_2d,
    run_inpaint_benchmark,
    run_patch_benchmark,
    write_csv,
)
from csimrec.pgmio import write_pgm
from csimrec.solver1d import SolverConfig1D
from csimrec.solver2d import SolverConfig2D
from csimrec.transforms import idct2d


def smooth_image(shape=(32, 32), amplitude=90.0):
    """Low-frequency synthetic image, easy for sparse recovery."""
    coeff = np.zeros(shape)
    coeff[0, 1], coeff[1, 0], coeff[1, 1] = amplitude, 0.6 * amplitude, 0.3 * amplitude
    img = idct2d(coeff) + 128.0
    return np.clip(img, 0, 255)


@pytest.fixture()
def smooth_pgm(tmp_path):
    path = tmp_path / "smooth.pgm"
    write_pgm(smooth_image(), path)
    return str(path)


class TestRandomMask1d:
    def test_counts(self, rng):
        assert random_mask(64, 0.5, rng).m == 32
        assert random_mask(64, 0.1, rng).m == 6

    def test_deterministic(self):
        a = random_mask(64, 0.3, np.random.default_rng(7))
        b = random_mask(64, 0.3, np.random.default_rng(7))
        np.testing.assert_array_equal(a.observed, b.observed)

    def test_valid_indices(self, rng):
        mask = random_mask(64, 0.1, rng)
        assert mask.observed.size == np.unique(mask.observed).size
        assert mask.observed.min() >= 0 and mask.observed.max() < 64
        assert np.all(np.diff(mask.observed) > 0)

    @pytest.mark.parametrize("sr", [0.0, 1.0, -0.2, 1.5])
    def test_rate_domain(self, sr, rng):
        with pytest.raises(ValueError):
            random_mask(64, sr, rng)

    def test_rounds_to_zero(self, rng):
        with pytest.raises(ValueError):
            random_mask(4, 0.1, rng)


class TestRandomMask2d:
    def test_count_and_binary(self, rng):
        mask = random_mask_2d((16, 16), 0.3, rng)
        assert mask.m == round(0.3 * 256)
        assert set(np.unique(mask.grid)) <= {0.0, 1.0}

    def test_deterministic(self):
        a = random_mask_2d((8, 8), 0.5, np.random.default_rng(3))
        b = random_mask_2d((8, 8), 0.5, np.random.default_rng(3))
        np.testing.assert_array_equal(a.grid, b.grid)


class TestExtractPatches:
    def test_tile_count_and_length(self, rng):
        img = rng.uniform(0, 255, size=(16, 16))
        patches = extract_patches(img, 8)
        assert patches.shape == (4, 64)

    def test_raster_order(self):
        img = np.arange(64, dtype=float).reshape(8, 8)
        patches = extract_patches(img, 8)
        # row-major raster scan: element (0, 1) lands at flat index 1
        assert patches[0, 1] == img[0, 1]
        np.testing.assert_array_equal(patches[0], np.arange(64))

    def test_reassembly_round_trip(self, rng):
        img = rng.uniform(0, 255, size=(24, 16))
        p = 8
        patches = extract_patches(img, p)
        th, tw = 24 // p, 16 // p
        rebuilt = (
            patches.reshape(th, tw, p, p).transpose(0, 2, 1, 3).reshape(24, 16)
        )
        np.testing.assert_array_equal(rebuilt, img)

    def test_tile_order_is_row_major(self, rng):
        img = rng.uniform(size=(16, 24))
        patches = extract_patches(img, 8)
        np.testing.assert_array_equal(
            patches[1].reshape(8, 8), img[0:8, 8:16]
        )

    def test_too_small_rejected(self):
        with pytest.raises(ValueError):
            extract_patches(np.zeros((4, 16)), 8)


class TestPatchBenchmark:
    def test_deterministic_rows(self, smooth_pgm):
        spec = ExperimentSpec(
            images=(smooth_pgm,), sampling_rates=(0.5,), seed=11,
            num_patches=3, measure_time=False,
        )
        assert run_patch_benchmark(spec) == run_patch_benchmark(spec)

    def test_quality_improves_with_rate(self, smooth_pgm):
        spec = ExperimentSpec(
            images=(smooth_pgm,), sampling_rates=(0.3, 0.5), seed=4,
            num_patches=6, measure_time=False,
        )
        rows = run_patch_benchmark(spec)
        assert rows[1].psnr_db > rows[0].psnr_db

    def test_near_full_rate_hits_inf(self, smooth_pgm):
        # round(0.999 * 64) == 64: every sample observed, recovery is exact
        spec = ExperimentSpec(
            images=(smooth_pgm,), sampling_rates=(0.999,), seed=0,
            num_patches=2, measure_time=False,
        )
        rows = run_patch_benchmark(spec)
        assert rows[0].psnr_db == math.inf

    def test_too_many_patches_rejected(self, smooth_pgm):
        spec = ExperimentSpec(
            images=(smooth_pgm,), sampling_rates=(0.5,), num_patches=100
        )
        with pytest.raises(ValueError):
            run_patch_benchmark(spec)

    def test_thread_pool_matches_serial(self, smooth_pgm, monkeypatch):
        spec = ExperimentSpec(
            images=(smooth_pgm,), sampling_rates=(0.4,), seed=2,
            num_patches=4, measure_time=False,
        )
        serial = run_patch_benchmark(spec)
        monkeypatch.setenv("CSIMREC_THREADS", "4")
        threaded = run_patch_benchmark(spec)
        assert serial == threaded


class TestInpaintBenchmark:
    def test_deterministic_rows(self, smooth_pgm):
        spec = ExperimentSpec(
            images=(smooth_pgm,), sampling_rates=(0.5,), seed=9,
            config2d=SolverConfig2D(max_iter=10), measure_time=False,
        )
        assert run_inpaint_benchmark(spec) == run_inpaint_benchmark(spec)

    def test_row_fields(self, smooth_pgm):
        spec = ExperimentSpec(
            images=(smooth_pgm,), sampling_rates=(0.5,), seed=9,
            config2d=SolverConfig2D(max_iter=10),
        )
        (row,) = run_inpaint_benchmark(spec)
        assert row.image == "smooth"
        assert row.sr == 0.5 and row.seed == 9
        assert row.psnr_db > 20.0 and 0.0 <= row.ssim <= 1.0
        assert row.seconds > 0.0


class TestCsv:
    def test_header_and_shape(self, smooth_pgm):
        spec = ExperimentSpec(
            images=(smooth_pgm,), sampling_rates=(0.5,), seed=1,
            num_patches=2, measure_time=False,
        )
        rows = run_patch_benchmark(spec)
        buf = io.StringIO()
        write_csv(rows, buf)
        lines = buf.getvalue().strip().split("\n")
        assert lines[0] == ",".join(CSV_HEADER)
        assert len(lines) == 2
        cells = lines[1].split(",")
        assert cells[0] == "smooth" and cells[1] == "0.5" and cells[2] == "1"
        assert cells[6] == "0.000000"

    def test_inf_serializes(self):
        from csimrec.bench import ResultRow

        buf = io.StringIO()
        write_csv(
            [ResultRow("x", 0.5, 0, math.inf, 1.0, 0.0, 0.0)], buf
        )
        assert "inf" in buf.getvalue()


class TestSpecValidation:
    def test_requires_images(self):
        with pytest.raises(ValueError):
            ExperimentSpec(images=(), sampling_rates=(0.5,))

    def test_requires_rates_in_range(self):
        with pytest.raises(ValueError):
            ExperimentSpec(images=("a.pgm",), sampling_rates=(1.2,))

    def test_config_overrides_carried(self):
        spec = ExperimentSpec(
            images=("a.pgm",), sampling_rates=(0.5,),
            config1d=SolverConfig1D(max_iter=7),
        )
        assert spec.config1d.max_iter == 7
