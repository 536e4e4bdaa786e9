"""Kazhdan-Lusztig combinatorics and homological dimension tables for finite Weyl groups."""

try:
    from ._klcalc import *  # noqa: F401,F403  (installed package layout)
    from . import _klcalc as _impl
except ImportError:  # in-tree layout: the extension sits directly on sys.path
    from _klcalc import *  # noqa: F401,F403
    import _klcalc as _impl

__all__ = [name for name in dir(_impl) if not name.startswith("_")]
__version__ = _impl.__version__
