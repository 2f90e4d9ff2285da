"""
Dataset manifest: the images a batch evaluation or refinement runs over.
"""
from collections import UserDict

from .errors import ManifestError


class ManifestEntry:
    """
    One dataset item.

    Attributes:
        id (str): Unique entry id
        image_path (Path): Shadow image
        shadow_mask_path (Path): Shadow mask
        labelmap_path (Path | None): Material segmentation (file or directory)
        annotation_path (Path | None): Edge-pixel annotation
        result_path (Path | None): Image to evaluate instead of the input
        gt_path (Path | None): Shadow-free ground truth, enables MAE
    """
    OPTIONAL_FIELDS = ("labelmap_path", "annotation_path", "result_path", "gt_path")

    def __init__(self, entry_id, image_path, shadow_mask_path, labelmap_path=None,
                 annotation_path=None, result_path=None, gt_path=None):
        if not str(entry_id).strip():
            raise ManifestError("Manifest entry id cannot be empty")
        self.id = str(entry_id)
        self.image_path = image_path
        self.shadow_mask_path = shadow_mask_path
        self.labelmap_path = labelmap_path
        self.annotation_path = annotation_path
        self.result_path = result_path
        self.gt_path = gt_path

    def referenced_paths(self):
        """list[Path]: Every path the entry names."""
        paths = [self.image_path, self.shadow_mask_path]
        paths.extend(getattr(self, name) for name in ManifestEntry.OPTIONAL_FIELDS)
        return [p for p in paths if p is not None]

    def to_dict(self):
        data = {"id": self.id, "image_path": str(self.image_path), "shadow_mask_path": str(self.shadow_mask_path)}
        for name in ManifestEntry.OPTIONAL_FIELDS:
            value = getattr(self, name)
            if value is not None:
                data[name] = str(value)
        return data

    def __str__(self):
        return f"Entry {self.id}: {self.image_path}"


class DatasetManifest(UserDict):
    """
    Ordered mapping of entry id to ManifestEntry.

    Extends UserDict so entries can be looked up by id while keeping the
    file order for iteration.
    """

    def add_entry(self, entry: ManifestEntry):
        """
        Add an entry.

        Raises:
            ManifestError: If the id is already present
        """
        if entry.id in self.data:
            raise ManifestError(f"Duplicate manifest id '{entry.id}'")
        self.data[entry.id] = entry

    def entries(self):
        """list[ManifestEntry]: Entries in file order."""
        return list(self.data.values())
