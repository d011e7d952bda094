"""HTTP face of the library: FastAPI app and its pydantic wire models."""

from .app import app, create_app

__all__ = ["app", "create_app"]
