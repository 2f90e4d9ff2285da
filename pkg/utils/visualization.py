"""
Edge sample visualization.
"""
import cv2
import numpy as np

from models.image import RgbImage

IN_COLOR = (255, 0, 0)
OUT_COLOR = (0, 255, 0)


def render_edge_visualization(image: RgbImage, sample_sets) -> RgbImage:
    """
    Draw edge samples over an image.

    S_in pixels are painted red and S_out pixels green; P_in patches are
    outlined in red and P_out patches in green.

    Args:
        image (RgbImage): Background image
        sample_sets (list[EdgeSampleSet]): Samples to draw

    Returns:
        RgbImage: Annotated copy of the image
    """
    canvas = np.ascontiguousarray(np.rint(image.data * 255.0).astype(np.uint8))
    for sample in sample_sets:
        for pixels, color in ((sample.s_in, IN_COLOR), (sample.s_out, OUT_COLOR)):
            if len(pixels):
                canvas[pixels.coords[:, 0], pixels.coords[:, 1]] = color
        for patches, color in ((sample.p_in, IN_COLOR), (sample.p_out, OUT_COLOR)):
            for patch in patches:
                row, col = patch.top_left
                cv2.rectangle(canvas, (col, row), (col + patch.size - 1, row + patch.size - 1), color, 1)
    return RgbImage(canvas / 255.0)
