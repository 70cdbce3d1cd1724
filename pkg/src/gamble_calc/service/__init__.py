"""HTTP service wrapping the calculation core.

The package's computations are stateless request/response transforms, so
they are exposed as a small JSON-over-HTTP service; the command-line
front-end drives the very same handler functions in process, which keeps
the two entry points behaviorally identical by construction.
"""

from .app import app, create_app

__all__ = ["app", "create_app"]
