"""Uncertainty-inequality verifier for self-adjoint operator pairs on graphs."""

try:
    from ._uncert import *  # noqa: F401,F403  (installed wheel layout)
except ImportError:
    from _uncert import *  # noqa: F401,F403  (in-tree CMake build)
