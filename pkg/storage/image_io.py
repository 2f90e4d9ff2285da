"""
Raster file I/O: images, shadow masks and material label maps.

PNG (8/16-bit) and JPEG are decoded with OpenCV; everything is converted to
the toolkit's [0, 1] float representation on load.
"""
import logging
import re
from pathlib import Path

import cv2
import numpy as np
from PIL import Image, UnidentifiedImageError

from models.errors import DimensionMismatchError, ImageLoadError
from models.image import BinaryMask, LabelMap, RgbImage

logger = logging.getLogger(__name__)

SEGMENT_FILE_PATTERN = re.compile(r"^seg_(\d+)\.png$", re.IGNORECASE)
OVERLAP_WARNING_PIXELS = 0
MASK_THRESHOLD = 0.5


def _read_raw(path):
    """
    Decode a raster file without any conversion.

    Returns:
        np.ndarray: H x W or H x W x C array in OpenCV channel order

    Raises:
        ImageLoadError: If the file is missing, unreadable or zero sized
    """
    path = Path(path)
    if not path.is_file():
        raise ImageLoadError(f"Image file not found: {path}")
    buffer = np.fromfile(str(path), dtype=np.uint8)
    if buffer.size == 0:
        raise ImageLoadError(f"Image file is empty: {path}")
    raw = cv2.imdecode(buffer, cv2.IMREAD_UNCHANGED)
    if raw is None:
        raise ImageLoadError(f"Unsupported or corrupt image format: {path}")
    if raw.ndim < 2 or raw.shape[0] == 0 or raw.shape[1] == 0:
        raise ImageLoadError(f"Image has a zero dimension: {path}")
    return raw


def _bit_depth_max(raw, path):
    if raw.dtype == np.uint8:
        return 255.0
    if raw.dtype == np.uint16:
        return 65535.0
    raise ImageLoadError(f"Unsupported sample type {raw.dtype} in {path}")


def _to_rgb(raw):
    """Drop alpha and reorder OpenCV's BGR to RGB; gray is replicated."""
    if raw.ndim == 2:
        return np.repeat(raw[:, :, None], 3, axis=2)
    channels = raw.shape[2]
    if channels == 1:
        return np.repeat(raw, 3, axis=2)
    if channels == 2:
        return np.repeat(raw[:, :, :1], 3, axis=2)
    return raw[:, :, 2::-1]


def load_image(path) -> RgbImage:
    """
    Load an RGB(A) or grayscale raster as an RgbImage.

    Values are divided by the bit-depth maximum (255 or 65535); alpha is discarded.

    Args:
        path (str | Path): PNG or JPEG file

    Returns:
        RgbImage: Image with values in [0, 1]

    Raises:
        ImageLoadError: If the file cannot be decoded
    """
    raw = _read_raw(path)
    scale = _bit_depth_max(raw, path)
    return RgbImage(_to_rgb(raw).astype(np.float64) / scale)


def save_image(path, image: RgbImage):
    """
    Write an RgbImage as an 8-bit PNG (value * 255, rounded).

    Raises:
        ImageLoadError: If the file cannot be written
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    data = np.rint(image.data * 255.0).astype(np.uint8)
    ok, encoded = cv2.imencode(".png", np.ascontiguousarray(data[:, :, ::-1]))
    if not ok:
        raise ImageLoadError(f"Could not encode PNG for {path}")
    try:
        encoded.tofile(str(path))
    except OSError as e:
        raise ImageLoadError(f"Could not write {path}: {e}") from e


def load_mask(path, threshold=MASK_THRESHOLD) -> BinaryMask:
    """
    Load a grayscale or color raster as a BinaryMask.

    A pixel is True iff the mean of its channels, scaled to [0, 1], exceeds
    the threshold.

    Raises:
        ImageLoadError: If the file cannot be decoded
    """
    raw = _read_raw(path)
    scale = _bit_depth_max(raw, path)
    luminance = _to_rgb(raw).astype(np.float64).mean(axis=2) / scale
    return BinaryMask(luminance > threshold)


def _load_label_file(path) -> LabelMap:
    # OpenCV expands palettes to colors, Pillow keeps the palette indices
    path = Path(path)
    if not path.is_file():
        raise ImageLoadError(f"Label map file not found: {path}")
    try:
        with Image.open(path) as img:
            img.load()
            if img.mode in ("P", "L", "I", "I;16", "I;16B", "I;16L"):
                raw = np.array(img)
            elif img.mode == "RGB":
                raw = np.array(img)
                if not (np.array_equal(raw[:, :, 0], raw[:, :, 1]) and np.array_equal(raw[:, :, 1], raw[:, :, 2])):
                    raise ImageLoadError(f"Label map must be indexed or grayscale, got color data: {path}")
                raw = raw[:, :, 0]
            else:
                raise ImageLoadError(f"Unsupported label map mode {img.mode}: {path}")
    except (UnidentifiedImageError, OSError) as e:
        raise ImageLoadError(f"Could not read label map {path}: {e}") from e
    if raw.ndim != 2 or raw.size == 0:
        raise ImageLoadError(f"Label map has a zero dimension: {path}")
    return LabelMap(raw.astype(np.int64))


def _segment_files(directory):
    files = []
    for entry in directory.iterdir():
        match = SEGMENT_FILE_PATTERN.match(entry.name)
        if match and entry.is_file():
            segment_id = int(match.group(1))
            if segment_id < 1:
                raise ImageLoadError(f"Segment id must be positive: {entry.name}")
            files.append((segment_id, entry))
    return sorted(files)


def _load_label_directory(directory, overlap_warning=OVERLAP_WARNING_PIXELS) -> LabelMap:
    files = _segment_files(directory)
    if not files:
        raise ImageLoadError(f"No seg_<id>.png files in {directory}")
    labels = None
    claimed = None
    overlap = 0
    for segment_id, path in files:
        mask = load_mask(path).data
        if labels is None:
            labels = np.zeros(mask.shape, dtype=np.int64)
            claimed = np.zeros(mask.shape, dtype=bool)
        elif mask.shape != labels.shape:
            raise DimensionMismatchError(
                f"{path.name} is {mask.shape[0]}x{mask.shape[1]}, expected {labels.shape[0]}x{labels.shape[1]}"
            )
        overlap += int(np.count_nonzero(mask & claimed))
        labels[mask] = segment_id
        claimed |= mask
    if overlap > overlap_warning:
        logger.warning("Segment masks in %s overlap on %d pixel(s); later ids win", directory, overlap)
    return LabelMap(labels, overlap_count=overlap)


def load_labelmap(source, overlap_warning=OVERLAP_WARNING_PIXELS) -> LabelMap:
    """
    Load a material segmentation.

    Args:
        source (str | Path): Either an indexed / grayscale PNG whose values are
            segment ids, or a directory of binary masks named seg_<id>.png
        overlap_warning (int): Overlap pixel count above which a warning is logged

    Returns:
        LabelMap: Segment ids; in directory mode later ids overwrite earlier
        ones and ``overlap_count`` reports the overlapping pixels

    Raises:
        ImageLoadError: If the source cannot be read
        DimensionMismatchError: If directory masks differ in size
    """
    source = Path(source)
    if source.is_dir():
        return _load_label_directory(source, overlap_warning)
    return _load_label_file(source)
