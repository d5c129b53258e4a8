"""Access to the scheme files shipped with the package."""

from __future__ import annotations

from importlib import resources

from .io import parse_expression
from .scheme import Scheme

BUNDLED = ("strassen", "s47", "s95")


def bundled_text(name: str) -> str:
    if name not in BUNDLED:
        raise ValueError(f"no bundled scheme {name!r}; available: {BUNDLED}")
    return (resources.files(__package__) / "schemes" / f"{name}.exp").read_text()


def bundled_scheme(name: str) -> Scheme:
    """Parse one of the shipped schemes by short name.

    ``strassen`` is the 7-product 2x2 scheme; ``s47`` and ``s95`` are the
    bundled 47-product 4x4 and 95-product 5x5 schemes (characteristic 2).
    """
    return parse_expression(bundled_text(name))
