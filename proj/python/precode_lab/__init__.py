"""Python bindings for the precode MU-MIMO downlink precoding library."""

try:
    from precode_lab._precode_lab import *  # noqa: F401,F403  (installed layout)
    from precode_lab._precode_lab import __version__  # noqa: F401
except ImportError:  # pragma: no cover - in-tree build layout
    from _precode_lab import *  # noqa: F401,F403
    from _precode_lab import __version__  # noqa: F401
