"""
Pixel and patch samples taken from an RgbImage.

This module provides the PixelSet and Patch classes together with the
pure gather helpers that read them out of an image.
"""
import numpy as np

from .image import RgbImage


class PixelSet:
    """
    Ordered coordinates with the colors read at those coordinates.

    Attributes:
        coords (np.ndarray): N x 2 int64 array of (row, col)
        colors (np.ndarray): N x 3 float64 array of (r, g, b)
    """

    def __init__(self, coords, colors):
        """
        Initialize a pixel set.

        Args:
            coords (array-like): N (row, col) pairs
            colors (array-like): N (r, g, b) triples

        Raises:
            ValueError: If the lengths differ or the arrays have the wrong shape
        """
        coords = np.asarray(coords, dtype=np.int64).reshape(-1, 2)
        colors = np.asarray(colors, dtype=np.float64).reshape(-1, 3)
        if len(coords) != len(colors):
            raise ValueError(f"PixelSet has {len(coords)} coordinates but {len(colors)} colors")
        coords.setflags(write=False)
        colors.setflags(write=False)
        self.coords = coords
        self.colors = colors

    @classmethod
    def empty(cls):
        return cls(np.empty((0, 2), dtype=np.int64), np.empty((0, 3)))

    @classmethod
    def concat(cls, sets):
        """Concatenate pixel sets, keeping their order."""
        sets = list(sets)
        if not sets:
            return cls.empty()
        return cls(np.concatenate([s.coords for s in sets]), np.concatenate([s.colors for s in sets]))

    def __len__(self):
        return len(self.coords)

    def __bool__(self):
        return len(self.coords) > 0

    def __str__(self):
        return f"PixelSet with {len(self)} pixel(s)"


class Patch:
    """
    Square image patch.

    Attributes:
        top_left (tuple[int, int]): (row, col) of the first pixel
        size (int): Side length in pixels
        pixels (np.ndarray): size x size x 3 colors in [0, 1]
        region_id (int): Material region the patch was sampled from (0 = none)
    """

    def __init__(self, top_left, size, pixels, region_id=0):
        pixels = np.asarray(pixels, dtype=np.float64)
        if pixels.shape != (size, size, 3):
            raise ValueError(f"Patch pixels must have shape {(size, size, 3)}, got {pixels.shape}")
        pixels = pixels.copy()
        pixels.setflags(write=False)
        self.top_left = (int(top_left[0]), int(top_left[1]))
        self.size = int(size)
        self.pixels = pixels
        self.region_id = int(region_id)

    def __str__(self):
        return f"Patch {self.size}x{self.size} at {self.top_left}"


def _check_in_bounds(image: RgbImage, coords: np.ndarray):
    if len(coords) == 0:
        return
    rows, cols = coords[:, 0], coords[:, 1]
    outside = (rows < 0) | (rows >= image.height) | (cols < 0) | (cols >= image.width)
    if np.any(outside):
        bad = tuple(coords[np.argmax(outside)].tolist())
        raise IndexError(f"Coordinate {bad} is outside the {image.height}x{image.width} image")


def gather_colors(image: RgbImage, coords) -> PixelSet:
    """
    Read the colors at the given coordinates, in coordinate order.

    Args:
        image (RgbImage): Source image
        coords (array-like): (row, col) pairs

    Returns:
        PixelSet: Coordinates with their colors

    Raises:
        IndexError: If a coordinate lies outside the image
    """
    coords = np.asarray(coords, dtype=np.int64).reshape(-1, 2)
    _check_in_bounds(image, coords)
    return PixelSet(coords, image.data[coords[:, 0], coords[:, 1]])


def extract_patch(image: RgbImage, top_left, size, region_id=0) -> Patch:
    """
    Cut a size x size patch out of an image.

    Raises:
        IndexError: If the patch does not lie fully inside the image
    """
    row, col = int(top_left[0]), int(top_left[1])
    if row < 0 or col < 0 or row + size > image.height or col + size > image.width:
        raise IndexError(f"Patch at {(row, col)} of size {size} leaves the image")
    return Patch((row, col), size, image.data[row:row + size, col:col + size], region_id)
