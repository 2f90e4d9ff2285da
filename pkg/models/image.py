"""
Image, mask and label-map rasters.

RgbImage holds colors in [0, 1]; BinaryMask holds shadow (or foreground)
flags; LabelMap holds one material segment id per pixel, 0 meaning
unlabeled.
"""
import numpy as np

from .raster import Raster


class RgbImage(Raster):
    """
    H x W x 3 float64 image with every channel finite and in [0, 1].
    """

    def __init__(self, data):
        """
        Initialize an RGB image with validation.

        Args:
            data (array-like): H x W x 3 color values

        Raises:
            ValueError: If the shape is wrong or a value is non-finite or out of range
        """
        array = np.asarray(data, dtype=np.float64)
        if array.ndim != 3 or array.shape[2] != 3:
            raise ValueError(f"RGB image must have shape HxWx3, got {array.shape}")
        if not np.all(np.isfinite(array)):
            raise ValueError("RGB image contains non-finite values")
        if array.size and (array.min() < 0.0 or array.max() > 1.0):
            raise ValueError("RGB image values must lie in [0, 1]")
        super().__init__(array)

    @classmethod
    def filled(cls, height, width, color):
        """Return a constant image of the given color."""
        return cls(np.broadcast_to(np.asarray(color, dtype=np.float64), (height, width, 3)))


class BinaryMask(Raster):
    """
    H x W boolean mask, True marking shadow (or foreground) pixels.
    """

    def __init__(self, data):
        array = np.asarray(data)
        if array.ndim != 2:
            raise ValueError(f"Binary mask must be two dimensional, got shape {array.shape}")
        super().__init__(array.astype(bool))

    @property
    def count(self):
        """int: Number of True pixels."""
        return int(np.count_nonzero(self.data))

    def coords(self):
        """
        Return the True pixel coordinates in raster order.

        Returns:
            list[tuple[int, int]]: (row, col) pairs
        """
        rows, cols = np.nonzero(self.data)
        return list(zip(rows.tolist(), cols.tolist()))

    def __invert__(self):
        return BinaryMask(~self.data)

    def __and__(self, other):
        self.require_same_shape(other, "mask")
        return BinaryMask(self.data & other.data)

    def __or__(self, other):
        self.require_same_shape(other, "mask")
        return BinaryMask(self.data | other.data)

    def __sub__(self, other):
        self.require_same_shape(other, "mask")
        return BinaryMask(self.data & ~other.data)


class LabelMap(Raster):
    """
    H x W map of non-negative integer segment ids (0 = unlabeled).

    Attributes:
        overlap_count (int): Pixels claimed by more than one source mask when
            the map was assembled from a directory of masks, else 0
    """

    UNLABELED = 0

    def __init__(self, data, overlap_count=0):
        array = np.asarray(data)
        if array.ndim != 2:
            raise ValueError(f"Label map must be two dimensional, got shape {array.shape}")
        if array.size and not np.issubdtype(array.dtype, np.integer):
            if not np.all(np.equal(np.mod(array, 1), 0)):
                raise ValueError("Label map ids must be integers")
        array = array.astype(np.int64)
        if array.size and array.min() < 0:
            raise ValueError("Label map ids must be non-negative")
        super().__init__(array)
        self.overlap_count = int(overlap_count)

    @classmethod
    def single_segment(cls, height, width, segment_id=1):
        """Return a label map where every pixel belongs to one segment."""
        return cls(np.full((height, width), segment_id, dtype=np.int64))

    def segment_ids(self):
        """
        Return the labeled segment ids in ascending order (0 excluded).

        Returns:
            list[int]: Segment ids
        """
        ids = np.unique(self.data)
        return [int(i) for i in ids if i != LabelMap.UNLABELED]

    def segment_mask(self, segment_id):
        """Return the BinaryMask of one segment."""
        return BinaryMask(self.data == segment_id)
