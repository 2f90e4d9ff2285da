"""
Material regions and the edge samples drawn from them.
"""
from .image import BinaryMask
from .pixel_set import PixelSet


class MaterialRegion:
    """
    One segment of the label map together with its shadow-band overlap.

    A region is material-consistent when the shadow edge crosses it, i.e.
    both band counts reach the sampler's tau_band.

    Attributes:
        segment_id (int): Label-map id
        mask (BinaryMask): Pixels of the segment
        area (int): Pixel count of the segment
        in_band_count (int): Inner shadow band pixels inside the segment
        out_band_count (int): Outer shadow band pixels inside the segment
    """

    def __init__(self, segment_id, mask: BinaryMask, in_band_count, out_band_count):
        self.segment_id = int(segment_id)
        self.mask = mask
        self.area = mask.count
        self.in_band_count = int(in_band_count)
        self.out_band_count = int(out_band_count)

    def is_consistent(self, tau_band):
        """bool: True if both sides of the edge have at least tau_band pixels."""
        return self.in_band_count >= tau_band and self.out_band_count >= tau_band

    def to_dict(self):
        return {
            "segment_id": self.segment_id,
            "area": self.area,
            "in_band_count": self.in_band_count,
            "out_band_count": self.out_band_count,
        }

    def __str__(self):
        return (
            f"Region {self.segment_id}: area {self.area}, "
            f"in-band {self.in_band_count}, out-band {self.out_band_count}"
        )


class EdgeSampleSet:
    """
    Supervision pairs of one region (or of all regions pooled, region_id 0).

    Attributes:
        region_id (int): Segment id, 0 for the pooled set
        s_in (PixelSet): Inner band pixels
        s_out (PixelSet): Outer band pixels
        p_in (list[Patch]): Patches inside the shadow, tagged with their region
        p_out (list[Patch]): Patches outside the shadow, tagged with their region
    """
    POOLED_ID = 0

    def __init__(self, region_id, s_in: PixelSet, s_out: PixelSet, p_in=None, p_out=None):
        self.region_id = int(region_id)
        self.s_in = s_in
        self.s_out = s_out
        self.p_in = list(p_in) if p_in is not None else []
        self.p_out = list(p_out) if p_out is not None else []

    def patch_groups(self):
        """
        Group patches by the region they were sampled from.

        Returns:
            dict[int, tuple[list[Patch], list[Patch]]]: region id -> (p_in, p_out),
            in ascending region order
        """
        groups = {}
        for patch in self.p_in:
            groups.setdefault(patch.region_id, ([], []))[0].append(patch)
        for patch in self.p_out:
            groups.setdefault(patch.region_id, ([], []))[1].append(patch)
        return dict(sorted(groups.items()))

    def to_dict(self):
        return {
            "region_id": self.region_id,
            "s_in": self.s_in.coords.tolist(),
            "s_out": self.s_out.coords.tolist(),
            "p_in": [{"top_left": list(p.top_left), "size": p.size, "region_id": p.region_id} for p in self.p_in],
            "p_out": [{"top_left": list(p.top_left), "size": p.size, "region_id": p.region_id} for p in self.p_out],
        }

    def __str__(self):
        return (
            f"EdgeSampleSet {self.region_id}: |S_in|={len(self.s_in)}, |S_out|={len(self.s_out)}, "
            f"|P_in|={len(self.p_in)}, |P_out|={len(self.p_out)}"
        )
