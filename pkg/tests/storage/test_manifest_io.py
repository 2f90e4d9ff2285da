"""
Tests for manifest loading.
"""
import json

import pytest

from models.errors import ManifestError
from storage.manifest_io import load_manifest


def _write(directory, document):
    path = directory / "manifest.json"
    path.write_text(json.dumps(document) if not isinstance(document, str) else document, encoding="utf-8")
    return path


@pytest.fixture
def dataset(tmp_path):
    for name in ("a.png", "a_mask.png", "b.png", "b_mask.png", "b_labels.png"):
        (tmp_path / name).write_bytes(b"")
    return tmp_path


class TestLoadManifest:
    """Test suite for load_manifest."""

    def test_entries_in_file_order(self, dataset):
        """Test ids, order and relative path resolution."""
        path = _write(dataset, [
            {"id": "b", "image_path": "b.png", "shadow_mask_path": "b_mask.png", "labelmap_path": "b_labels.png"},
            {"id": "a", "image_path": "a.png", "shadow_mask_path": "a_mask.png"},
        ])
        manifest = load_manifest(path)
        assert [e.id for e in manifest.entries()] == ["b", "a"]
        assert manifest["b"].labelmap_path == dataset / "b_labels.png"
        assert manifest["a"].labelmap_path is None
        assert manifest["a"].image_path == dataset / "a.png"

    def test_absolute_paths_kept(self, dataset):
        """Test that absolute paths are not re-rooted."""
        path = _write(dataset, [{"id": "a", "image_path": str(dataset / "a.png"), "shadow_mask_path": "a_mask.png"}])
        assert load_manifest(path)["a"].image_path == dataset / "a.png"

    def test_missing_file_names_entry(self, dataset):
        """Test that a missing referenced file names its entry."""
        path = _write(dataset, [{"id": "a", "image_path": "a.png", "shadow_mask_path": "gone.png"}])
        with pytest.raises(ManifestError, match="'a'.*gone.png"):
            load_manifest(path)

    def test_missing_field(self, dataset):
        """Test that required fields are enforced."""
        path = _write(dataset, [{"id": "a", "image_path": "a.png"}])
        with pytest.raises(ManifestError, match="shadow_mask_path"):
            load_manifest(path)

    def test_duplicate_id(self, dataset):
        """Test that ids must be unique."""
        entry = {"id": "a", "image_path": "a.png", "shadow_mask_path": "a_mask.png"}
        with pytest.raises(ManifestError, match="Duplicate"):
            load_manifest(_write(dataset, [entry, entry]))

    @pytest.mark.parametrize("document, match", [
        ("{oops", "not valid JSON"),
        ({"id": "a"}, "JSON array"),
        (["a.png"], "must be an object"),
    ])
    def test_malformed(self, dataset, document, match):
        """Test malformed manifest documents."""
        with pytest.raises(ManifestError, match=match):
            load_manifest(_write(dataset, document))

    def test_missing_manifest(self, tmp_path):
        """Test that a missing manifest is a ManifestError."""
        with pytest.raises(ManifestError, match="not found"):
            load_manifest(tmp_path / "none.json")
