from . import schemas  # noqa: F401

__all__ = ["schemas"]
