"""Digital images, digital covering maps and their variants, path lifting, exhaustive verification."""

from .errors import (
    DigitalTopologyError,
    DimensionError,
    MapError,
    NotApplicable,
    NotInImageError,
    OverflowCap,
    UnrealizableCurveError,
)
from .lattice import (
    Adjacency,
    CurveKind,
    DigitalImage,
    adjacent,
    classify_curve,
    is_connected,
    is_path,
    make_scc,
    neighborhood,
)
from .lifting import lift_paths, upl_bounded, upl_onestep
from .maps import (
    DigitalMap,
    Verdict,
    continuity_by_connectedness,
    is_continuous,
    is_isomorphism,
    restrict,
    subimages_isomorphic,
)
from .predicates import (
    ClassificationReport,
    SheetDecomposition,
    classify,
    is_covering,
    is_han_pseudocovering,
    is_local_isomorphism,
    is_pak_pseudocovering,
    is_pl_isomorphism,
    is_wl_isomorphism,
)

__version__ = "0.1.0"
