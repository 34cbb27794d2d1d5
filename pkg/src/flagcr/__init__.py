"""flagcr: exact arithmetic classification of homogeneous CR structures on
complete flag manifolds, plus a structure-constants CR-algebra toolkit."""

__version__ = "0.1.0"
