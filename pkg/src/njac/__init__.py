"""Exact computation of jacobian Newton diagrams of plane map germs.

The package computes the Newton diagram of the discriminant of a finite
polynomial map germ (C^2,0) -> (C^2,0) by two independent exact routes
(jacobian branch decomposition, and support-function reconstruction from
generic pencil Milnor numbers) and provides harnesses checking that the
diagram is an equisingularity invariant of the pair of curves.
"""

from .diagram import ElementaryDiagram, NewtonDiagram, SupportVector
from .errors import NjacError
from .parsing import parse_polynomial
from .polynomials import MPoly, format_poly

__all__ = [
    "ElementaryDiagram",
    "MPoly",
    "NewtonDiagram",
    "NjacError",
    "SupportVector",
    "format_poly",
    "parse_polynomial",
]

__version__ = "0.1.0"
