"""
Tests for annotation files.
"""
import json

import numpy as np
import pytest

from models.annotation import Annotation
from models.errors import AnnotationError, ImageLoadError
from models.image import RgbImage
from storage.annotation_io import load_annotation, render_overlay, save_annotation
from storage.image_io import load_image, save_image


class TestLoadAnnotation:
    """Test suite for load_annotation."""

    def test_png_overlay_raster_order(self, tmp_path):
        """Test that red and green pixels are read in raster order and other colors ignored."""
        data = np.full((3, 3, 3), 0.5)
        data[2, 0] = (1, 0, 0)
        data[0, 1] = (1, 0, 0)
        data[1, 1] = (0, 1, 0)
        data[2, 2] = (1, 1, 0)
        save_image(tmp_path / "a.png", RgbImage(data))
        annotation = load_annotation(tmp_path / "a.png")
        assert annotation.s_pixels == [(0, 1), (2, 0)]
        assert annotation.ns_pixels == [(1, 1)]

    def test_json_keeps_file_order(self, tmp_path):
        """Test that JSON coordinates keep their order."""
        path = tmp_path / "a.json"
        path.write_text(json.dumps({"s": [[3, 3], [0, 0]], "ns": [[5, 1]]}), encoding="utf-8")
        annotation = load_annotation(path)
        assert annotation.s_pixels == [(3, 3), (0, 0)]
        assert annotation.ns_pixels == [(5, 1)]

    def test_png_without_green(self, tmp_path):
        """Test that an overlay needs both colors."""
        data = np.zeros((2, 2, 3))
        data[0, 0] = (1, 0, 0)
        save_image(tmp_path / "a.png", RgbImage(data))
        with pytest.raises(AnnotationError, match="non-shadow"):
            load_annotation(tmp_path / "a.png")

    @pytest.mark.parametrize("text, match", [
        ("not json", "not valid JSON"),
        ("[1, 2]", "'s' and 'ns'"),
        ('{"s": [[1]], "ns": [[0, 0]]}', "malformed"),
        ('{"s": [[1, 1]], "ns": [[1, 1]]}', "both sides"),
    ])
    def test_bad_json(self, tmp_path, text, match):
        """Test malformed JSON annotations."""
        path = tmp_path / "a.json"
        path.write_text(text, encoding="utf-8")
        with pytest.raises(AnnotationError, match=match):
            load_annotation(path)

    def test_missing_png(self, tmp_path):
        """Test that a missing overlay is an ImageLoadError."""
        with pytest.raises(ImageLoadError):
            load_annotation(tmp_path / "missing.png")


class TestSaveAnnotation:
    """Test suite for save_annotation and render_overlay."""

    def test_json_roundtrip(self, tmp_path):
        """Test that a saved JSON annotation loads back equal."""
        annotation = Annotation([(1, 2), (0, 0)], [(4, 4)])
        save_annotation(tmp_path / "sub" / "a.json", annotation)
        assert load_annotation(tmp_path / "sub" / "a.json") == annotation

    def test_png_on_background(self, tmp_path):
        """Test that marks are painted over the background and the rest is kept."""
        background = RgbImage.filled(3, 3, (0.2, 0.2, 0.2))
        save_annotation(tmp_path / "a.png", Annotation([(0, 0)], [(2, 2)]), background=background)
        image = load_image(tmp_path / "a.png").data
        assert image[0, 0].tolist() == [1.0, 0.0, 0.0]
        assert image[2, 2].tolist() == [0.0, 1.0, 0.0]
        assert image[1, 1].tolist() == [0.2, 0.2, 0.2]

    def test_png_needs_canvas(self, tmp_path):
        """Test that a PNG without shape or background is rejected."""
        with pytest.raises(AnnotationError, match="shape"):
            save_annotation(tmp_path / "a.png", Annotation([(0, 0)], [(1, 1)]))

    def test_overlay_out_of_bounds(self):
        """Test that marks must fit the canvas."""
        with pytest.raises(AnnotationError, match="outside"):
            render_overlay(Annotation([(0, 0)], [(5, 5)]), shape=(3, 3))
