"""Torsion of conical frusta: chain-level, closed-form and spectral computations."""

from importlib import resources as _resources

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401


def schema_path(name):
    """Path of a shipped JSON schema, e.g. ``schema_path("cli_output")``."""
    return _resources.files(__name__).joinpath("schemas", name + ".schema.json")
