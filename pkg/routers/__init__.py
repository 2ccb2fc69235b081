from .group_router import router as group_router

__all__ = ["group_router"]
