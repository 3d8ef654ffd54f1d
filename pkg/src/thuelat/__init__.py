"""Thue equations and congruence lattices toolkit."""

from .forms import BinaryForm
from .lattices import Lattice2
from .enumeration import ThueInstance, SolutionRecord, SearchRegion

__all__ = ["BinaryForm", "Lattice2", "ThueInstance", "SolutionRecord", "SearchRegion"]
__version__ = "0.1.0"
