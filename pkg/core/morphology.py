"""
Binary morphology and the shadow edge bands.

Pixels outside the image count as background for both operators, so bands
thin out at the image border instead of wrapping.
"""
from scipy import ndimage

from models.image import BinaryMask
from models.structuring_element import StructuringElement


def erode(mask: BinaryMask, se: StructuringElement) -> BinaryMask:
    """
    Binary erosion with a square element.

    A pixel stays True iff every pixel of its (2r+1)^2 window is True,
    repeated ``se.iterations`` times.
    """
    eroded = ndimage.binary_erosion(
        mask.data, structure=se.footprint(), iterations=se.iterations, border_value=0
    )
    return BinaryMask(eroded)


def dilate(mask: BinaryMask, se: StructuringElement) -> BinaryMask:
    """
    Binary dilation with a square element.

    A pixel becomes True iff any pixel of its (2r+1)^2 window is True,
    repeated ``se.iterations`` times.
    """
    dilated = ndimage.binary_dilation(
        mask.data, structure=se.footprint(), iterations=se.iterations, border_value=0
    )
    return BinaryMask(dilated)


def inner_band(mask: BinaryMask, se: StructuringElement) -> BinaryMask:
    """Return mask AND NOT erode(mask): the ring just inside the boundary."""
    return mask - erode(mask, se)


def outer_band(mask: BinaryMask, se: StructuringElement) -> BinaryMask:
    """Return dilate(mask) AND NOT mask: the ring just outside the boundary."""
    return dilate(mask, se) - mask
