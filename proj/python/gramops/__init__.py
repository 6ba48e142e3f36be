"""Graph invariants from operator commutation patterns."""

try:
    from ._gramops import *  # noqa: F401,F403  (installed layout)
    from ._gramops import __doc__ as _doc
except ImportError:  # pragma: no cover - in-tree builds put the module on sys.path
    from _gramops import *  # noqa: F401,F403
    from _gramops import __doc__ as _doc

__doc__ = _doc
__version__ = "0.1.0"
