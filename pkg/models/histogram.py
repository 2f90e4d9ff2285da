"""
Per-channel color histogram.
"""
import numpy as np

from .errors import HistogramError


class ColorHistogram:
    """
    Three per-channel normalized histograms of B bins over [0, 1].

    Bin k covers [k/B, (k+1)/B); the last bin is closed so 1.0 lands in it.

    Attributes:
        bins (int): Bins per channel
        values (np.ndarray): 3 x B array, each row summing to 1 (all zero when empty)
        empty (bool): True when built from no pixels
    """
    DEFAULT_BINS = 256
    SUM_TOLERANCE = 1e-9

    def __init__(self, values, empty=False):
        values = np.asarray(values, dtype=np.float64)
        if values.ndim != 2 or values.shape[0] != 3 or values.shape[1] < 2:
            raise HistogramError(f"Histogram values must have shape 3xB with B >= 2, got {values.shape}")
        if np.any(values < 0) or not np.all(np.isfinite(values)):
            raise HistogramError("Histogram values must be finite and non-negative")
        if not empty and not np.allclose(values.sum(axis=1), 1.0, rtol=0, atol=ColorHistogram.SUM_TOLERANCE):
            raise HistogramError("Each histogram channel must sum to 1")
        values = values.copy()
        values.setflags(write=False)
        self.values = values
        self.bins = values.shape[1]
        self.empty = bool(empty)

    def require_nonempty(self):
        """
        Raises:
            HistogramError: If the histogram was built from no pixels
        """
        if self.empty:
            raise HistogramError("Histogram of an empty pixel set cannot be compared")

    def channel(self, index):
        return self.values[index]

    def __str__(self):
        state = "empty" if self.empty else "normalized"
        return f"ColorHistogram {self.bins} bins ({state})"
