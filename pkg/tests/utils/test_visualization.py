"""
Tests for the edge sample visualization.
"""
import numpy as np

from models.pixel_set import Patch, PixelSet
from models.region import EdgeSampleSet
from tests.fixtures import flat_image
from utils.visualization import render_edge_visualization


def test_pixels_and_patch_outlines():
    """Test red S_in, green S_out and a patch outline with an untouched interior."""
    image = flat_image(12, 12, (0.0, 0.0, 0.0))
    sample = EdgeSampleSet(
        1,
        PixelSet([(0, 0)], [(0, 0, 0)]),
        PixelSet([(0, 1)], [(0, 0, 0)]),
        p_in=[Patch((4, 4), 4, np.zeros((4, 4, 3)), 1)],
    )
    result = render_edge_visualization(image, [sample]).data
    assert result[0, 0].tolist() == [1.0, 0.0, 0.0]
    assert result[0, 1].tolist() == [0.0, 1.0, 0.0]
    assert result[4, 4].tolist() == [1.0, 0.0, 0.0]
    assert result[7, 7].tolist() == [1.0, 0.0, 0.0]
    assert result[5, 5].tolist() == [0.0, 0.0, 0.0]
    assert np.array_equal(image.data[0, 0], [0.0, 0.0, 0.0])
