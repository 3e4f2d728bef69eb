"""Orbital diameters of primitive affine groups over finite fields."""

__version__ = "0.1.0"
tool_version = __version__
