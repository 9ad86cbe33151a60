from . import ar, basics, graded, purity

__all__ = [
    "basics",
    "purity",
    "graded",
    "ar",
]
