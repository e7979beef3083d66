"""5-colorability of graphs in the Klein bottle and the torus via obstruction subgraphs."""

__version__ = "0.1.0"
