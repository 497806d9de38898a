"""HTTP service exposing the exact cluster algebra toolkit."""

from .app import app

__all__ = ["app"]
