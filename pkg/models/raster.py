"""
Base raster class for the shadow edge toolkit.

This module provides the Raster class that serves as a parent for all
per-pixel types (RgbImage, BinaryMask, LabelMap).
"""
import numpy as np

from .errors import DimensionMismatchError


class Raster:
    """
    Base class storing an immutable 2-D (or 2-D plus channels) array.

    This is the parent class for all raster types. It freezes a private copy
    of the array, exposes the image dimensions and provides the shared
    dimension check used by every paired operation.

    Attributes:
        data (np.ndarray): Read-only array, first two axes are rows and columns
    """

    def __init__(self, data):
        """
        Initialize a raster with an array.

        Args:
            data (array-like): Pixel data, at least two dimensional

        Raises:
            ValueError: If the array is not at least 2-D or has a zero dimension
        """
        array = np.array(data, copy=True)
        if array.ndim < 2:
            raise ValueError("Raster data must be at least two dimensional")
        if array.shape[0] < 1 or array.shape[1] < 1:
            raise ValueError("Raster height and width must be at least 1")
        array.setflags(write=False)
        self.data = array

    @property
    def height(self):
        """int: Number of pixel rows."""
        return self.data.shape[0]

    @property
    def width(self):
        """int: Number of pixel columns."""
        return self.data.shape[1]

    @property
    def shape(self):
        """tuple: (height, width)."""
        return self.data.shape[:2]

    def require_same_shape(self, other, what="raster"):
        """
        Check that another raster shares this raster's height and width.

        Args:
            other (Raster): Raster to compare with
            what (str): Name used in the error message

        Raises:
            DimensionMismatchError: If the dimensions differ
        """
        if self.shape != other.shape:
            raise DimensionMismatchError(
                f"{what} is {other.height}x{other.width}, expected {self.height}x{self.width}"
            )

    def __eq__(self, other):
        return type(self) is type(other) and np.array_equal(self.data, other.data)

    def __hash__(self):
        return hash((type(self).__name__, self.shape, self.data.tobytes()))

    def __str__(self):
        """
        Return string representation of the raster.

        Returns:
            str: Type name and dimensions
        """
        return f"{type(self).__name__} {self.height}x{self.width}"
