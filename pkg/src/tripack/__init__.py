"""Triangle packing in tournaments given by linear representations."""

from tripack.core import (
    AdjacencyTournament,
    Arc,
    Kind,
    LinearTournament,
    Triangle,
    detect_sparse,
    enumerate_triangles,
    is_valid_packing,
)

__version__ = "0.1.0"
