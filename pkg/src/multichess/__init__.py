"""Multiple chessboard complexes: generators, exact homology, shellings,
connectivity bounds and colored Tverberg search."""

__version__ = "0.1.0"
