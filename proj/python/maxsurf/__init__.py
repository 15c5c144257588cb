"""Maximal and minimal surfaces from Weierstrass data."""

try:
    from ._maxsurf import (
        Surface,
        catalog_names,
        dist_to_lightcone,
        harmonic_measure,
        stereographic,
    )
except ImportError:  # build-tree layout: extension next to the package
    from _maxsurf import (
        Surface,
        catalog_names,
        dist_to_lightcone,
        harmonic_measure,
        stereographic,
    )

__all__ = [
    "Surface",
    "catalog_names",
    "dist_to_lightcone",
    "harmonic_measure",
    "stereographic",
]
