"""
Dataset manifest loading.

A manifest is a JSON array of entry objects; relative paths are resolved
against the directory of the manifest file.
"""
import json
from pathlib import Path

from models.errors import ManifestError
from models.manifest import DatasetManifest, ManifestEntry

REQUIRED_FIELDS = ("id", "image_path", "shadow_mask_path")


def _resolve(base, value):
    if value is None:
        return None
    path = Path(value)
    return path if path.is_absolute() else base / path


def _entry_from_dict(raw, base, position):
    if not isinstance(raw, dict):
        raise ManifestError(f"Manifest entry #{position} must be an object")
    missing = [name for name in REQUIRED_FIELDS if not raw.get(name)]
    if missing:
        raise ManifestError(f"Manifest entry #{position} is missing {', '.join(missing)}")
    entry = ManifestEntry(
        raw["id"],
        _resolve(base, raw["image_path"]),
        _resolve(base, raw["shadow_mask_path"]),
        **{name: _resolve(base, raw.get(name)) for name in ManifestEntry.OPTIONAL_FIELDS},
    )
    for path in entry.referenced_paths():
        if not path.exists():
            raise ManifestError(f"Entry '{entry.id}' references a missing file: {path}")
    return entry


def load_manifest(path) -> DatasetManifest:
    """
    Load and validate a dataset manifest.

    Args:
        path (str | Path): JSON manifest file

    Returns:
        DatasetManifest: Entries in file order

    Raises:
        ManifestError: If the document is malformed, an id repeats or a file is missing
    """
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            document = json.load(f)
    except FileNotFoundError as e:
        raise ManifestError(f"Manifest not found: {path}") from e
    except json.JSONDecodeError as e:
        raise ManifestError(f"Manifest {path} is not valid JSON: {e}") from e
    if not isinstance(document, list):
        raise ManifestError("Manifest must be a JSON array of entries")
    manifest = DatasetManifest()
    base = path.parent
    for position, raw in enumerate(document, start=1):
        manifest.add_entry(_entry_from_dict(raw, base, position))
    return manifest
