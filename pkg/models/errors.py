"""
Error hierarchy for the shadow edge toolkit.

Every domain error is a ValueError so that callers (and the CLI
``input_error`` decorator) can treat them like any other invalid input.
"""


class ShadowToolError(ValueError):
    """Base class for all toolkit errors."""


class ImageLoadError(ShadowToolError):
    """Raised when a raster cannot be read, decoded or written."""


class DimensionMismatchError(ShadowToolError):
    """Raised when paired rasters do not share height and width."""


class EmptySampleError(ShadowToolError):
    """Raised when a pixel or patch set required by an operation is empty."""


class HistogramError(ShadowToolError):
    """Raised for empty or unnormalized histograms."""


class NoMaterialEdgeError(ShadowToolError):
    """Raised when no material-consistent shadow edge exists in an image."""

    def __init__(self, message="no material-consistent shadow edge found"):
        super().__init__(message)


class OptimizationError(ShadowToolError):
    """Raised when the refinement objective becomes non-finite."""


class AnnotationError(ShadowToolError):
    """Raised for invalid edge-pixel annotations."""


class ManifestError(ShadowToolError):
    """Raised for invalid dataset manifests."""
