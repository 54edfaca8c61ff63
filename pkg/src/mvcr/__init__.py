"""Mirkovic-Vilonen polytopes, LBZ crystals and Demazure crystals, exactly."""
from .kernel import BACKEND
from .rootdata import build_cartan, weyl_group_of
from .mvcrystal import generate_mv, highest, polytope_from_lusztig

__all__ = ["BACKEND", "build_cartan", "weyl_group_of", "generate_mv", "highest",
           "polytope_from_lusztig"]
__version__ = "0.1.0"
