"""
Configuration of material-consistent edge extraction and sampling.
"""
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        __str__ = str.__str__
        __format__ = str.__format__

from .structuring_element import StructuringElement


class SamplerConfig:
    """
    Settings for region qualification, band extraction and patch sampling.

    Attributes:
        band_se (StructuringElement): Element used for the shadow-mask bands
        min_region_area (int): Segments smaller than this are ignored
        tau_band (int): Minimum band pixels required on each side of the edge
        patch_count (int): Patches drawn per side and region
        patch_size (int): Patch side length
        material_erosion (StructuringElement): Erosion applied to a region before patch sampling
        rng_seed (int): Base seed, combined with the segment id per region
    """
    MIN_REGION_AREA = 500
    TAU_BAND = 20
    PATCH_COUNT = 8
    PATCH_SIZE = 16

    def __init__(
        self,
        band_se=None,
        min_region_area=MIN_REGION_AREA,
        tau_band=TAU_BAND,
        patch_count=PATCH_COUNT,
        patch_size=PATCH_SIZE,
        material_erosion=None,
        rng_seed=0,
    ):
        """
        Initialize the sampler configuration with validation.

        Raises:
            ValueError: If a numeric setting is out of range
        """
        if min_region_area < 0:
            raise ValueError("min_region_area must be non-negative")
        if tau_band < 1:
            raise ValueError("tau_band must be at least 1")
        if patch_count < 1:
            raise ValueError("patch_count must be at least 1")
        if patch_size < 2:
            raise ValueError("patch_size must be at least 2")
        if rng_seed < 0:
            raise ValueError("rng_seed must be non-negative")
        self.band_se = band_se if band_se is not None else StructuringElement()
        self.min_region_area = int(min_region_area)
        self.tau_band = int(tau_band)
        self.patch_count = int(patch_count)
        self.patch_size = int(patch_size)
        self.material_erosion = material_erosion if material_erosion is not None else StructuringElement()
        self.rng_seed = int(rng_seed)

    def region_seed(self, segment_id):
        """int: Seed of one region's RNG, independent of processing order."""
        return self.rng_seed ^ int(segment_id)

    def to_dict(self):
        return {
            "band_se": self.band_se.to_dict(),
            "min_region_area": self.min_region_area,
            "tau_band": self.tau_band,
            "patch_count": self.patch_count,
            "patch_size": self.patch_size,
            "material_erosion": self.material_erosion.to_dict(),
            "rng_seed": self.rng_seed,
        }


class SampleMode(StrEnum):
    """How edge pixels of several regions are grouped."""
    PER_REGION = "per-region"
    POOLED = "pooled"
