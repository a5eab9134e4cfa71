"""Gradient-oriented Hough transform with line and rectangle detection.

The heavy lifting lives in the compiled extension ``houghx._houghx``; this
package re-exports its public surface.
"""

from ._houghx import (
    Accumulator,
    AccumulatorGeometry,
    Peak,
    RectangleHit,
    canny,
    clip_line,
    detect_rectangles,
    find_peaks,
    fold,
    generate_scene,
    hough,
    orientation_full,
    read_pgm,
    sobel,
    write_pgm,
)

__all__ = [
    "Accumulator",
    "AccumulatorGeometry",
    "Peak",
    "RectangleHit",
    "canny",
    "clip_line",
    "detect_rectangles",
    "find_peaks",
    "fold",
    "generate_scene",
    "hough",
    "orientation_full",
    "read_pgm",
    "sobel",
    "write_pgm",
]
