"""Backend selection for the hot loops.

The compiled extension is used when it imports; otherwise the pure-Python
module takes over.  Set ``POSETLIN_PURE=1`` to force the fallback.
"""
import os

from . import _pycore

if os.environ.get("POSETLIN_PURE") == "1":
    _impl = _pycore
else:
    try:
        from . import _core as _impl
    except ImportError:  # extension not built
        _impl = _pycore

BACKEND = _impl.BACKEND

count_extensions = _impl.count_extensions
subset_zeta = _impl.subset_zeta
m_coefficients = _impl.m_coefficients
plucking = _impl.plucking
chi_transform = _impl.chi_transform
chi_full = _impl.chi_full
minimal_union = _impl.minimal_union
reversing = _impl.reversing
plucking_buckets = _impl.plucking_buckets
f_direct = _impl.f_direct

__all__ = [
    "BACKEND",
    "count_extensions",
    "subset_zeta",
    "m_coefficients",
    "plucking",
    "chi_transform",
    "chi_full",
    "minimal_union",
    "reversing",
    "plucking_buckets",
    "f_direct",
]
