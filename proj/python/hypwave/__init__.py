"""Spherical analysis and wave propagator kernels on rank-one noncompact
symmetric spaces (real and complex hyperbolic spaces in the radial picture)."""

from hypwave._hypwave import *  # noqa: F401,F403
from hypwave._hypwave import __version__  # noqa: F401
