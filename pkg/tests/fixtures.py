"""
Synthetic rasters shared by the test suites.
"""
import json
from pathlib import Path

import numpy as np
from PIL import Image

from models.image import BinaryMask, LabelMap, RgbImage
from storage.image_io import save_image


def textured_image(height=64, width=64, low=0.3, high=0.9, seed=0):
    """Image with independent uniform noise per pixel and channel in [low, high]."""
    rng = np.random.default_rng(seed)
    return RgbImage(rng.uniform(low, high, size=(height, width, 3)))


def flat_image(height=32, width=32, color=(0.5, 0.5, 0.5)):
    return RgbImage.filled(height, width, color)


def disk_mask(height=64, width=64, center=None, radius=20):
    """BinaryMask of a Euclidean disk."""
    center = center if center is not None else (height // 2, width // 2)
    rows, cols = np.mgrid[0:height, 0:width]
    return BinaryMask((rows - center[0]) ** 2 + (cols - center[1]) ** 2 <= radius ** 2)


def rectangle_mask(height, width, rows, cols):
    """BinaryMask that is True on rows[0]:rows[1] x cols[0]:cols[1]."""
    data = np.zeros((height, width), dtype=bool)
    data[rows[0]:rows[1], cols[0]:cols[1]] = True
    return BinaryMask(data)


def random_mask(height, width, density=0.5, seed=0):
    rng = np.random.default_rng(seed)
    return BinaryMask(rng.random((height, width)) < density)


def darken(image: RgbImage, mask: BinaryMask, factor):
    """Multiply the image by ``factor`` inside the mask."""
    data = image.data.copy()
    data[mask.data] *= factor
    return RgbImage(data)


SCENE_HEIGHT = 80
SCENE_WIDTH = 100
STRADDLING_ID = 1
SHADOWED_ID = 2
SMALL_ID = 3


def three_segment_scene():
    """
    Shadow rectangle with three labeled segments.

    Segment 1 straddles the right shadow edge, segment 2 lies deep inside the
    shadow and segment 3 straddles the bottom edge but is smaller than the
    default minimum area.

    Returns:
        tuple[BinaryMask, LabelMap]: (shadow, labels)
    """
    shadow = rectangle_mask(SCENE_HEIGHT, SCENE_WIDTH, (10, 70), (10, 50))
    labels = np.zeros((SCENE_HEIGHT, SCENE_WIDTH), dtype=np.int64)
    labels[20:60, 30:80] = STRADDLING_ID
    labels[20:60, 14:28] = SHADOWED_ID
    labels[64:76, 30:60] = SMALL_ID
    return shadow, LabelMap(labels)


def write_mask(path, mask: BinaryMask):
    """Save a mask as a black / white PNG."""
    save_image(path, RgbImage(np.repeat(mask.data[:, :, None], 3, axis=2).astype(np.float64)))
    return Path(path)


def write_labels(path, labels: LabelMap):
    """Save a label map as an 8-bit grayscale PNG of segment ids."""
    Image.fromarray(labels.data.astype(np.uint8)).save(path)
    return Path(path)


def write_manifest(directory, entries):
    """Write manifest.json holding ``entries`` (paths relative to ``directory``)."""
    path = Path(directory) / "manifest.json"
    path.write_text(json.dumps(entries), encoding="utf-8")
    return path


def write_entry(directory, entry_id, image: RgbImage, shadow: BinaryMask, labels: LabelMap = None, **extra):
    """
    Write the files of one dataset entry and return its manifest object.

    ``extra`` maps optional manifest fields to images (saved as PNG) or to
    ready-made relative paths.
    """
    directory = Path(directory)
    save_image(directory / f"{entry_id}_image.png", image)
    write_mask(directory / f"{entry_id}_mask.png", shadow)
    entry = {"id": entry_id, "image_path": f"{entry_id}_image.png", "shadow_mask_path": f"{entry_id}_mask.png"}
    if labels is not None:
        write_labels(directory / f"{entry_id}_labels.png", labels)
        entry["labelmap_path"] = f"{entry_id}_labels.png"
    for name, value in extra.items():
        if isinstance(value, RgbImage):
            save_image(directory / f"{entry_id}_{name}.png", value)
            value = f"{entry_id}_{name}.png"
        entry[name] = value
    return entry
