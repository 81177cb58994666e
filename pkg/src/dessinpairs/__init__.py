"""Regular dessins from generating triples: construction, verification, counting."""

__version__ = "0.1.0"
