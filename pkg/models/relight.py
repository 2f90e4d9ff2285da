"""
Parameters of the per-channel affine relighting model.
"""
import numpy as np


class RelightParams:
    """
    Scale w and offset b per channel, globally and optionally per region.

    The global pair is the fallback for shadow pixels outside every
    qualifying region.

    Attributes:
        w (np.ndarray): Global scale, 3 values
        b (np.ndarray): Global offset, 3 values
        regions (dict[int, tuple[np.ndarray, np.ndarray]]): region id -> (w, b)
    """
    W_MIN = 1.0
    W_MAX = 8.0
    B_MIN = -0.5
    B_MAX = 0.5

    def __init__(self, w=(1.0, 1.0, 1.0), b=(0.0, 0.0, 0.0), regions=None):
        self.w = self._channels(w, "w")
        self.b = self._channels(b, "b")
        self.regions = {
            int(rid): (self._channels(rw, "w"), self._channels(rb, "b"))
            for rid, (rw, rb) in sorted((regions or {}).items())
        }

    @staticmethod
    def _channels(values, name):
        array = np.asarray(values, dtype=np.float64).reshape(-1)
        if array.shape != (3,):
            raise ValueError(f"Relight {name} must have three channels, got {array.shape}")
        if not np.all(np.isfinite(array)):
            raise ValueError(f"Relight {name} must be finite")
        array = array.copy()
        array.setflags(write=False)
        return array

    @classmethod
    def identity(cls, region_ids=()):
        """Return parameters that leave every pixel unchanged."""
        return cls(regions={rid: ((1.0, 1.0, 1.0), (0.0, 0.0, 0.0)) for rid in region_ids})

    @property
    def region_ids(self):
        return list(self.regions)

    def for_region(self, region_id):
        """tuple: (w, b) of a region, the global pair when the region has none."""
        return self.regions.get(region_id, (self.w, self.b))

    def to_vector(self):
        """
        Flatten to the optimizer's vector: global w, global b, then w, b per region.

        Returns:
            np.ndarray: 6 * (regions + 1) values
        """
        parts = [self.w, self.b]
        for rw, rb in self.regions.values():
            parts.extend([rw, rb])
        return np.concatenate(parts)

    def from_vector(self, vector):
        """Return parameters with this instance's layout and the given values."""
        vector = np.asarray(vector, dtype=np.float64)
        expected = 6 * (len(self.regions) + 1)
        if vector.shape != (expected,):
            raise ValueError(f"Relight vector must have {expected} values, got {vector.shape}")
        regions = {}
        for index, rid in enumerate(self.regions, start=1):
            regions[rid] = (vector[6 * index:6 * index + 3], vector[6 * index + 3:6 * index + 6])
        return RelightParams(vector[0:3], vector[3:6], regions)

    @classmethod
    def bounds(cls, size, w_max=W_MAX):
        """
        Lower and upper box of a parameter vector of the given size.

        Returns:
            tuple[np.ndarray, np.ndarray]: (lower, upper)
        """
        block_low = np.array([cls.W_MIN] * 3 + [cls.B_MIN] * 3)
        block_high = np.array([w_max] * 3 + [cls.B_MAX] * 3)
        blocks = size // 6
        return np.tile(block_low, blocks), np.tile(block_high, blocks)

    def project(self, w_max=W_MAX):
        """Return parameters clamped into the w and b boxes."""
        low, high = RelightParams.bounds(len(self.to_vector()), w_max)
        return self.from_vector(np.clip(self.to_vector(), low, high))

    def to_dict(self):
        return {
            "global": {"w": self.w.tolist(), "b": self.b.tolist()},
            "regions": {str(rid): {"w": rw.tolist(), "b": rb.tolist()} for rid, (rw, rb) in self.regions.items()},
        }

    def __eq__(self, other):
        return isinstance(other, RelightParams) and np.array_equal(self.to_vector(), other.to_vector()) \
            and self.region_ids == other.region_ids

    def __hash__(self):
        return hash(self.to_vector().tobytes())

    def __str__(self):
        w = ", ".join(f"{v:.4f}" for v in self.w)
        b = ", ".join(f"{v:.4f}" for v in self.b)
        return f"w=({w}) b=({b}) + {len(self.regions)} region(s)"
