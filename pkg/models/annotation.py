"""
Edge-pixel annotation used by the CDD metric.
"""
from .errors import AnnotationError


class Annotation:
    """
    Shadow-side (red) and non-shadow-side (green) pixel coordinates.

    Attributes:
        s_pixels (list[tuple[int, int]]): Shadow side coordinates
        ns_pixels (list[tuple[int, int]]): Non-shadow side coordinates
    """

    def __init__(self, s_pixels, ns_pixels):
        """
        Initialize an annotation with validation.

        Args:
            s_pixels (iterable): (row, col) pairs on the shadow side
            ns_pixels (iterable): (row, col) pairs on the non-shadow side

        Raises:
            AnnotationError: If a side is empty or a coordinate is on both sides
        """
        s_pixels = [(int(r), int(c)) for r, c in s_pixels]
        ns_pixels = [(int(r), int(c)) for r, c in ns_pixels]
        if not s_pixels:
            raise AnnotationError("Annotation has no shadow-side pixels")
        if not ns_pixels:
            raise AnnotationError("Annotation has no non-shadow-side pixels")
        shared = set(s_pixels) & set(ns_pixels)
        if shared:
            raise AnnotationError(f"Coordinate {min(shared)} is marked on both sides")
        self.s_pixels = s_pixels
        self.ns_pixels = ns_pixels

    def to_dict(self):
        return {"s": [list(p) for p in self.s_pixels], "ns": [list(p) for p in self.ns_pixels]}

    def __eq__(self, other):
        return isinstance(other, Annotation) and self.s_pixels == other.s_pixels and self.ns_pixels == other.ns_pixels

    def __hash__(self):
        return hash((tuple(self.s_pixels), tuple(self.ns_pixels)))

    def __str__(self):
        return f"Annotation with {len(self.s_pixels)} shadow and {len(self.ns_pixels)} non-shadow pixel(s)"
