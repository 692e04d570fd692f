"""Semi-discrete polyharmonic and Yau difference flows for closed polygons.

Closed n-gons in R^p evolve by constant-coefficient linear ODE systems built
from powers of the circulant second-difference matrix.  The package provides
exact spectral solutions, self-similar classification, asymptotic shape
extraction, an independent RK4 oracle, and a CLI that emits CSV tables and
SVG figures.
"""

from .circulant import (
    CirculantMatrix,
    EigenSystem,
    circulant_multiply,
    dft,
    eigen_system,
    idft,
    minimal_r,
    power_of_m,
    second_difference,
    um_value,
)
from .integrate import (
    DivergenceError,
    IntegratorConfig,
    PolyharmonicKind,
    StiffnessWarning,
    Trajectory,
    YauKind,
    integrate,
    rhs,
)
from .polygon import (
    Polygon,
    PolygonFormatError,
    RealBasisVectors,
    centroid,
    difference,
    eigen_polygon,
    energy,
    load_polygon,
    normals,
    real_basis,
    reconcile_vertex_counts,
    save_polygon_csv,
    save_polygon_json,
)
from .spectral_flow import (
    DegenerateModeError,
    FlowRangeError,
    FlowSolution,
    SelfSimilarity,
    SpectralDecomposition,
    affine_pushforward,
    classify_self_similar,
    decompose,
    flow_solution,
    reconstruct,
    rescaled_limit,
    solve,
    solve_planar_complex,
)
from .yau_flow import (
    YauProblem,
    YauSolution,
    yau_flow_between,
    yau_limit,
    yau_solution,
    yau_solve,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
