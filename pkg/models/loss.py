"""
Loss weights, per-region loss components and the combined loss report.
"""
import math


class LossWeights:
    """
    Weights of L_distance, L_distribution, L_per and L_nonshadow.

    Attributes:
        l1, l2, l3, l4 (float): Non-negative finite weights
    """
    DEFAULT = (1.0, 1.0, 0.1, 10.0)

    def __init__(self, l1=DEFAULT[0], l2=DEFAULT[1], l3=DEFAULT[2], l4=DEFAULT[3]):
        """
        Raises:
            ValueError: If a weight is negative or non-finite
        """
        for name, value in (("l1", l1), ("l2", l2), ("l3", l3), ("l4", l4)):
            if not math.isfinite(value) or value < 0:
                raise ValueError(f"Loss weight {name} must be finite and non-negative, got {value}")
        self.l1 = float(l1)
        self.l2 = float(l2)
        self.l3 = float(l3)
        self.l4 = float(l4)

    @classmethod
    def parse(cls, text):
        """
        Build weights from a comma separated "l1,l2,l3,l4" string.

        Raises:
            ValueError: If there are not exactly four numbers
        """
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 4:
            raise ValueError(f"Expected four comma separated weights, got '{text}'")
        return cls(*(float(p) for p in parts))

    def as_tuple(self):
        return (self.l1, self.l2, self.l3, self.l4)

    def __str__(self):
        return ",".join(f"{w:g}" for w in self.as_tuple())


class LossComponents:
    """
    Loss terms measured on one sample set; None marks a term not measured there.
    """

    def __init__(self, region_id, l_distance=None, l_distribution=None, l_per=None):
        self.region_id = int(region_id)
        self.l_distance = l_distance
        self.l_distribution = l_distribution
        self.l_per = l_per

    def to_dict(self):
        return {
            "l_distance": self.l_distance,
            "l_distribution": self.l_distribution,
            "l_per": self.l_per,
        }


class LossReport:
    """
    Averaged loss terms and their weighted total.

    Attributes:
        l_distance, l_distribution, l_per, l_nonshadow, l_total (float)
        per_region (dict[int, dict]): region id -> measured components
        nonshadow_enabled (bool): Whether l_nonshadow contributes to l_total
    """

    def __init__(self, l_distance, l_distribution, l_per, l_nonshadow, l_total, per_region=None, nonshadow_enabled=True):
        self.l_distance = float(l_distance)
        self.l_distribution = float(l_distribution)
        self.l_per = float(l_per)
        self.l_nonshadow = float(l_nonshadow)
        self.l_total = float(l_total)
        self.per_region = dict(per_region or {})
        self.nonshadow_enabled = bool(nonshadow_enabled)

    def to_dict(self):
        return {
            "l_distance": self.l_distance,
            "l_distribution": self.l_distribution,
            "l_per": self.l_per,
            "l_nonshadow": self.l_nonshadow,
            "l_total": self.l_total,
            "per_region": {str(k): v for k, v in self.per_region.items()},
        }

    def __str__(self):
        return (
            f"L_total={self.l_total:.6f} (distance {self.l_distance:.6f}, distribution "
            f"{self.l_distribution:.6f}, per {self.l_per:.6f}, nonshadow {self.l_nonshadow:.6f})"
        )
