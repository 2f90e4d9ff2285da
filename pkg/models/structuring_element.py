"""
Square structuring element for binary morphology.
"""
import numpy as np


class StructuringElement:
    """
    (2 * radius + 1) square structuring element applied ``iterations`` times.

    Attributes:
        radius (int): Half side length, at least 1
        iterations (int): Number of repeated applications, at least 1
    """
    DEFAULT_RADIUS = 1
    DEFAULT_ITERATIONS = 2

    def __init__(self, radius=DEFAULT_RADIUS, iterations=DEFAULT_ITERATIONS):
        """
        Initialize a structuring element with validation.

        Raises:
            ValueError: If radius or iterations is below 1
        """
        if int(radius) != radius or radius < 1:
            raise ValueError(f"Structuring element radius must be an integer >= 1, got {radius}")
        if int(iterations) != iterations or iterations < 1:
            raise ValueError(f"Structuring element iterations must be an integer >= 1, got {iterations}")
        self.radius = int(radius)
        self.iterations = int(iterations)

    def footprint(self):
        """np.ndarray: Boolean (2r+1) x (2r+1) window."""
        side = 2 * self.radius + 1
        return np.ones((side, side), dtype=bool)

    def to_dict(self):
        return {"radius": self.radius, "iterations": self.iterations}

    def __eq__(self, other):
        return isinstance(other, StructuringElement) and self.to_dict() == other.to_dict()

    def __hash__(self):
        return hash((self.radius, self.iterations))

    def __str__(self):
        return f"square r={self.radius} x{self.iterations}"
