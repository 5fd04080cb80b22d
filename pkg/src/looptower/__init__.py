"""Computer algebra for mod-2 loopspace-tower spectral charts.

Modules cover GF(2) linear algebra, the Steenrod algebra, finite unstable
modules, extended-power columns with their operations, the spectral page
assembly, nonrealization verdicts, and the file/chart formats behind the
CLI.
"""

from . import charts, cli, extpow, f2linalg, moduleio, nonreal, steenrod, tower, unstable

__version__ = "0.1.0"

__all__ = [
    "charts",
    "cli",
    "extpow",
    "f2linalg",
    "moduleio",
    "nonreal",
    "steenrod",
    "tower",
    "unstable",
]
