"""companion-algebra - exact algebra of pairs of companion matrices"""

from importlib.metadata import version, PackageNotFoundError

try:
    __version__ = version("companion-algebra")
except PackageNotFoundError:
    __version__ = "0.0.0-dev"

__all__ = [
    "app",
    "cli",
    "config",
    "core",
    "errors",
    "matrices",
    "models",
    "poly",
    "presentation",
    "rings",
    "sweep",
    "__version__",
]
