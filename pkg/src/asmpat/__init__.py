"""Pattern avoidance in alternating sign matrices."""

__version__ = "0.1.0"
