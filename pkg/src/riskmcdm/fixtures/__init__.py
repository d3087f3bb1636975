"""Bundled data files: a full corporate risk case and a small synthetic model."""

from importlib.resources import files


def path(name: str) -> str:
    """Absolute path of a bundled fixture file."""
    return str(files(__package__).joinpath(name))
