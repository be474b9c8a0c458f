from __future__ import annotations

import numpy as np
import pytest

from bivariate_dominance.sample_io import (
    BivariateSample,
    DegenerateAxisError,
    OutOfRangeError,
    RawSample,
    RescaleTransform,
    SampleFormatError,
    SampleSizeError,
    load_sample,
    rescale_pooled,
)


def _write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return p


def test_load_two_rows(tmp_path):
    s = load_sample(_write(tmp_path, "a.csv", "0.1,0.2\n0.3,0.4\n"))
    assert s.size == 2
    assert s.points.tolist() == [[0.1, 0.2], [0.3, 0.4]]
    assert s.label == "a"


def test_load_reports_bad_row(tmp_path):
    with pytest.raises(SampleFormatError) as e:
        load_sample(_write(tmp_path, "a.csv", "0.1,abc\n0.3,0.4\n"))
    assert e.value.row == 1
    assert "row 1" in str(e.value)


def test_load_bad_row_counts_after_header(tmp_path):
    with pytest.raises(SampleFormatError) as e:
        load_sample(_write(tmp_path, "a.csv", "x,y\n0.1,0.2\n0.3,?\n"), has_header=True)
    assert e.value.row == 2


def test_load_single_row_too_small(tmp_path):
    with pytest.raises(SampleSizeError, match="sample too small"):
        load_sample(_write(tmp_path, "a.csv", "0.1,0.2\n"))


def test_load_empty_file(tmp_path):
    with pytest.raises(SampleSizeError):
        load_sample(_write(tmp_path, "a.csv", ""))


def test_load_wrong_column_count(tmp_path):
    with pytest.raises(SampleFormatError, match="2 columns"):
        load_sample(_write(tmp_path, "a.csv", "1,2,3\n4,5,6\n"))


def test_load_tsv_inferred_from_suffix(tmp_path):
    s = load_sample(_write(tmp_path, "b.tsv", "x\ty\n1.5\t2\n3\t-4e-1\n"), has_header=True)
    assert s.points.tolist() == [[1.5, 2.0], [3.0, -0.4]]


def test_load_nan_is_rejected_with_row(tmp_path):
    with pytest.raises(SampleFormatError) as e:
        load_sample(_write(tmp_path, "a.csv", "0.1,0.2\nnan,0.4\n0.5,0.5\n"))
    assert e.value.row == 2


def test_load_row_numbers_count_blank_lines(tmp_path):
    with pytest.raises(SampleFormatError) as e:
        load_sample(_write(tmp_path, "a.csv", "0.1,0.2\n\n0.3,abc\n"))
    assert e.value.row == 3
    assert "row 3" in str(e.value)
    with pytest.raises(SampleFormatError) as e:
        load_sample(_write(tmp_path, "b.csv", "x,y\n\n0.1,0.2\n\ninf,0.4\n"), has_header=True)
    assert e.value.row == 4


def test_load_skips_blank_lines(tmp_path):
    s = load_sample(_write(tmp_path, "a.csv", "0.1,0.2\n\n0.3,0.4\n  \n"))
    assert s.points.tolist() == [[0.1, 0.2], [0.3, 0.4]]
    with pytest.raises(SampleSizeError):
        load_sample(_write(tmp_path, "b.csv", "\n\n"))


def test_raw_sample_keeps_duplicates():
    s = RawSample([[1.0, 1.0], [1.0, 1.0], [2.0, 3.0]])
    assert s.size == 3


def test_rescale_midpoint():
    a = RawSample([[2.0, 0.0], [7.0, 1.0]])
    b = RawSample([[12.0, 4.0], [5.0, 2.0]])
    ra, rb, t = rescale_pooled(a, b)
    assert ra.points[1, 0] == pytest.approx(0.5)
    assert ra.points[0, 0] == 0.0
    assert rb.points[0, 0] == 1.0
    assert rb.points[0, 1] == 1.0
    assert t.invert((0.5, 0.25)) == pytest.approx((7.0, 1.0))
    assert t.invert_axis("Y", 0.5) == pytest.approx(2.0)
    assert ra.rescale is t and rb.rescale is t


def test_rescale_identity_passes_points_unchanged():
    pts = [[0.1, 0.9], [0.3, 0.2]]
    ra, rb, t = rescale_pooled(RawSample(pts), RawSample([[0.5, 0.5], [0.0, 1.0]]), identity=True)
    assert ra.points.tolist() == pts
    assert t.identity_flag
    assert t.to_dict()["mode"] == "identity"


def test_rescale_identity_refuses_outside_points():
    with pytest.raises(OutOfRangeError):
        rescale_pooled(RawSample([[0.1, 1.5], [0.2, 0.2]]), RawSample([[0.5, 0.5], [0.1, 0.1]]), identity=True)


def test_rescale_degenerate_axis():
    a = RawSample([[3.0, 0.0], [3.0, 1.0]])
    b = RawSample([[3.0, 2.0], [3.0, 5.0]])
    with pytest.raises(DegenerateAxisError, match="x axis"):
        rescale_pooled(a, b)


def test_rescaled_points_stay_in_unit_square():
    rng = np.random.default_rng(3)
    a = RawSample(rng.normal(5.0, 3.0, size=(40, 2)))
    b = RawSample(rng.normal(-1.0, 0.2, size=(25, 2)))
    ra, rb, _ = rescale_pooled(a, b)
    pooled = np.vstack([ra.points, rb.points])
    assert pooled.min() == 0.0 and pooled.max() == 1.0


def test_bivariate_sample_bounds():
    with pytest.raises(OutOfRangeError):
        BivariateSample.from_points([[0.5, 1.2]])
    with pytest.raises(SampleSizeError):
        BivariateSample.from_points(np.empty((0, 2)))
    s = BivariateSample.from_points([[0.0, 1.0]])
    assert s.size == 1
    assert s.x.tolist() == [0.0] and s.y.tolist() == [1.0]


def test_transform_needs_positive_range():
    with pytest.raises(DegenerateAxisError):
        RescaleTransform(0.0, 0.0, 0.0, 1.0, identity_flag=False)
