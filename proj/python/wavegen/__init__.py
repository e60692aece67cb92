"""Filter bank synthesis, verification and signal decomposition."""

try:
    from ._wavegen import *  # noqa: F401,F403  (installed package layout)
    from ._wavegen import __doc__  # noqa: F401
except ImportError:  # in-tree builds put the module next to the package
    from _wavegen import *  # noqa: F401,F403
    from _wavegen import __doc__  # noqa: F401
