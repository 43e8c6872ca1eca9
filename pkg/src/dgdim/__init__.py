"""dgdim: exact-arithmetic workbench for derived homological dimensions
of non-positive commutative DG-rings built over graded polynomial quotients.
"""

__version__ = "0.1.0"
