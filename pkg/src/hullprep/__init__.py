"""Column min/max preconditioning for 2D integer convex hulls."""
from .baselines import PseudoHull, at_reduce, tztm_iterations, tztm_reduce
from .errors import (CoordinateRangeError, EmptyInputError, HullMismatchError,
                     HullprepError, IncompatiblePipelineError, InputFormatError,
                     InsufficientDataError, OracleBoundError)
from .geometry import (BoundingBox, Hull, Point, canonicalize_hull, find_bounds,
                       orientation)
from .hulls import brute_force_hull, graham_scan, jarvis_march, melkman, quickhull
from .occupancy import (BlockedBitset, WAryOccupancyTree, bit_index_map,
                        extract_word_positions, practical_linearity_check)
from .reducer import (ColumnExtremes, ExtremalArray, PolygonalChain, Preconditioned,
                      build_polyline, precondition, reduce, second_scan, translate)

__version__ = "0.1.0"
