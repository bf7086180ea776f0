"""Spanning-tree chain complex for delta-graded knot Floer homology.

Pipeline: parse a PD code, checkerboard-color the projection, build the
black graph, mark the arcs, enumerate spanning-tree resolutions, assemble
the twisted differential over GF(2)(T), and read off graded homology ranks.
"""

__version__ = "0.1.0"

from . import errors
from .diagram import PlanarDiagram, black_graph, faces_and_coloring, mirror, parse_pd, sign_data
from .field import Frac, frac_parse, frac_str, tpow

__all__ = [
    "errors",
    "PlanarDiagram",
    "parse_pd",
    "faces_and_coloring",
    "black_graph",
    "sign_data",
    "mirror",
    "Frac",
    "tpow",
    "frac_str",
    "frac_parse",
]
