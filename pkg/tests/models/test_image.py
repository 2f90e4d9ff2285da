"""
Tests for the raster classes.

This module contains tests for RgbImage, BinaryMask and LabelMap validation
and their helpers.
"""
import numpy as np
import pytest

from models.errors import DimensionMismatchError
from models.image import BinaryMask, LabelMap, RgbImage


class TestRgbImage:
    """Test suite for the RgbImage class."""

    def test_valid_image(self):
        """Test RgbImage keeps shape and values."""
        image = RgbImage(np.full((2, 3, 3), 0.25))
        assert image.shape == (2, 3)
        assert image.height == 2
        assert image.width == 3
        assert image.data[1, 2, 0] == 0.25

    def test_data_is_read_only_copy(self):
        """Test that the stored array is a frozen copy."""
        source = np.zeros((2, 2, 3))
        image = RgbImage(source)
        source[0, 0, 0] = 1.0
        assert image.data[0, 0, 0] == 0.0
        with pytest.raises(ValueError):
            image.data[0, 0, 0] = 0.5

    def test_wrong_channel_count(self):
        """Test that a 4-channel array is rejected."""
        with pytest.raises(ValueError, match="HxWx3"):
            RgbImage(np.zeros((2, 2, 4)))

    def test_out_of_range_value(self):
        """Test that values above 1 are rejected."""
        with pytest.raises(ValueError, match=r"\[0, 1\]"):
            RgbImage(np.full((2, 2, 3), 1.5))

    def test_non_finite_value(self):
        """Test that NaN is rejected."""
        data = np.zeros((2, 2, 3))
        data[0, 0, 1] = np.nan
        with pytest.raises(ValueError, match="non-finite"):
            RgbImage(data)

    def test_zero_dimension(self):
        """Test that a zero-height image is rejected."""
        with pytest.raises(ValueError):
            RgbImage(np.zeros((0, 2, 3)))

    def test_filled(self):
        """Test constant image construction."""
        image = RgbImage.filled(3, 4, (0.1, 0.2, 0.3))
        assert image.shape == (3, 4)
        assert np.allclose(image.data[2, 3], (0.1, 0.2, 0.3))

    def test_require_same_shape(self):
        """Test that a dimension mismatch names both sizes."""
        image = RgbImage.filled(3, 4, (0, 0, 0))
        with pytest.raises(DimensionMismatchError, match="3x4"):
            image.require_same_shape(BinaryMask(np.zeros((4, 3), dtype=bool)), "mask")

    def test_equality(self):
        """Test value equality of images."""
        assert RgbImage.filled(2, 2, (0.5, 0.5, 0.5)) == RgbImage.filled(2, 2, (0.5, 0.5, 0.5))
        assert RgbImage.filled(2, 2, (0.5, 0.5, 0.5)) != RgbImage.filled(2, 2, (0.4, 0.5, 0.5))

    def test_str(self):
        """Test string representation."""
        assert str(RgbImage.filled(3, 4, (0, 0, 0))) == "RgbImage 3x4"


class TestBinaryMask:
    """Test suite for the BinaryMask class."""

    def test_count_and_coords(self):
        """Test that coordinates come out in raster order."""
        mask = BinaryMask(np.array([[False, True], [True, True]]))
        assert mask.count == 3
        assert mask.coords() == [(0, 1), (1, 0), (1, 1)]

    def test_non_bool_input_is_converted(self):
        """Test that integer input becomes boolean."""
        mask = BinaryMask(np.array([[0, 2], [0, 0]]))
        assert mask.data.dtype == bool
        assert mask.count == 1

    def test_set_operators(self):
        """Test invert, and, or and difference."""
        a = BinaryMask(np.array([[True, True], [False, False]]))
        b = BinaryMask(np.array([[True, False], [True, False]]))
        assert (a & b).coords() == [(0, 0)]
        assert (a | b).count == 3
        assert (a - b).coords() == [(0, 1)]
        assert (~a).coords() == [(1, 0), (1, 1)]

    def test_operator_shape_mismatch(self):
        """Test that combining masks of different sizes fails."""
        with pytest.raises(DimensionMismatchError):
            BinaryMask(np.zeros((2, 2))) & BinaryMask(np.zeros((3, 2)))

    def test_rejects_three_dimensions(self):
        """Test that a 3-D array is rejected."""
        with pytest.raises(ValueError):
            BinaryMask(np.zeros((2, 2, 2)))


class TestLabelMap:
    """Test suite for the LabelMap class."""

    def test_segment_ids_exclude_unlabeled(self):
        """Test that id 0 is not a segment."""
        labels = LabelMap(np.array([[0, 3], [1, 3]]))
        assert labels.segment_ids() == [1, 3]

    def test_segment_mask(self):
        """Test extraction of one segment."""
        labels = LabelMap(np.array([[0, 3], [1, 3]]))
        assert labels.segment_mask(3).coords() == [(0, 1), (1, 1)]

    def test_single_segment(self):
        """Test full-frame single segment map."""
        labels = LabelMap.single_segment(2, 3)
        assert labels.segment_ids() == [1]
        assert labels.segment_mask(1).count == 6

    def test_negative_id_rejected(self):
        """Test that negative ids are rejected."""
        with pytest.raises(ValueError, match="non-negative"):
            LabelMap(np.array([[0, -1]]))

    def test_fractional_id_rejected(self):
        """Test that fractional ids are rejected."""
        with pytest.raises(ValueError, match="integers"):
            LabelMap(np.array([[0.5, 1.0]]))

    def test_integral_floats_accepted(self):
        """Test that float arrays holding whole numbers are accepted."""
        labels = LabelMap(np.array([[2.0, 1.0]]))
        assert labels.data.dtype == np.int64
        assert labels.segment_ids() == [1, 2]

    def test_overlap_count_default(self):
        """Test that overlap_count defaults to zero."""
        assert LabelMap(np.zeros((2, 2), dtype=int)).overlap_count == 0
