"""
Annotation files: red / green PNG overlays and JSON coordinate lists.
"""
import json
from pathlib import Path

import numpy as np

from models.annotation import Annotation
from models.errors import AnnotationError, ImageLoadError
from models.image import RgbImage
from .image_io import _bit_depth_max, _read_raw, _to_rgb, save_image

SHADOW_COLOR = (1.0, 0.0, 0.0)
NONSHADOW_COLOR = (0.0, 1.0, 0.0)


def _is_json(path):
    return Path(path).suffix.lower() == ".json"


def _load_overlay(path) -> Annotation:
    raw = _read_raw(path)
    full = _bit_depth_max(raw, path)
    rgb = _to_rgb(raw)
    red = (rgb[:, :, 0] == full) & (rgb[:, :, 1] == 0) & (rgb[:, :, 2] == 0)
    green = (rgb[:, :, 0] == 0) & (rgb[:, :, 1] == full) & (rgb[:, :, 2] == 0)
    return Annotation(np.argwhere(red).tolist(), np.argwhere(green).tolist())


def _load_json(path) -> Annotation:
    try:
        with open(path, "r", encoding="utf-8") as f:
            document = json.load(f)
    except json.JSONDecodeError as e:
        raise AnnotationError(f"Annotation {path} is not valid JSON: {e}") from e
    if not isinstance(document, dict) or "s" not in document or "ns" not in document:
        raise AnnotationError(f"Annotation {path} must be an object with 's' and 'ns' lists")
    try:
        return Annotation(document["s"], document["ns"])
    except AnnotationError:
        raise
    except (TypeError, ValueError) as e:
        raise AnnotationError(f"Annotation {path} holds malformed coordinates: {e}") from e


def load_annotation(path) -> Annotation:
    """
    Load an edge-pixel annotation.

    A PNG overlay marks shadow-side pixels pure red and non-shadow-side
    pixels pure green; every other color is ignored and coordinates come out
    in raster order. A JSON file holds {"s": [[r, c], ...], "ns": [[r, c], ...]}
    and keeps the file order.

    Args:
        path (str | Path): .png or .json file

    Returns:
        Annotation: Loaded coordinates

    Raises:
        FileNotFoundError: If a JSON file is missing
        ImageLoadError: If a PNG file is missing or unreadable
        AnnotationError: If a side has no pixels or a pixel is on both sides
    """
    if _is_json(path):
        return _load_json(path)
    return _load_overlay(path)


def render_overlay(annotation: Annotation, shape=None, background: RgbImage = None) -> RgbImage:
    """
    Paint an annotation onto a background image, or onto black of the given shape.

    Raises:
        AnnotationError: If neither shape nor background is given or a pixel is out of bounds
    """
    if background is not None:
        canvas = background.data.copy()
    elif shape is not None:
        canvas = RgbImage.filled(shape[0], shape[1], (0.0, 0.0, 0.0)).data.copy()
    else:
        raise AnnotationError("A PNG annotation needs an image shape or a background image")
    for pixels, color in ((annotation.s_pixels, SHADOW_COLOR), (annotation.ns_pixels, NONSHADOW_COLOR)):
        coords = np.asarray(pixels, dtype=np.int64).reshape(-1, 2)
        if np.any(coords < 0) or np.any(coords[:, 0] >= canvas.shape[0]) or np.any(coords[:, 1] >= canvas.shape[1]):
            raise AnnotationError(f"Annotation pixel outside the {canvas.shape[0]}x{canvas.shape[1]} canvas")
        canvas[coords[:, 0], coords[:, 1]] = color
    return RgbImage(canvas)


def save_annotation(path, annotation: Annotation, shape=None, background: RgbImage = None):
    """
    Save an annotation as JSON or as a PNG overlay, chosen by the file extension.

    Args:
        path (str | Path): Target .json or .png file
        annotation (Annotation): Coordinates to save
        shape (tuple[int, int] | None): Canvas size of a PNG without background
        background (RgbImage | None): Image the PNG marks are painted on

    Raises:
        AnnotationError: If a PNG has no canvas size
        ImageLoadError: If the file cannot be written
    """
    path = Path(path)
    if _is_json(path):
        path.parent.mkdir(parents=True, exist_ok=True)
        try:
            with open(path, "w", encoding="utf-8") as f:
                json.dump(annotation.to_dict(), f)
        except OSError as e:
            raise ImageLoadError(f"Could not write {path}: {e}") from e
        return
    save_image(path, render_overlay(annotation, shape, background))
