"""Lookup kernel selection.

The hot loop of analysis/generation is a tape walk over the compiled
machine.  A Cython extension implements it over flat arrays; if the
extension is missing (or ``FSTMORPH_PURE=1`` is set) the pure-Python kernel
is used instead.  Both produce identical results; ``benchmarks/`` compares
their speed.
"""

import os

from fstmorph.kernels.pylookup import OutputLimitError, PyMatcher

if os.environ.get("FSTMORPH_PURE", "") not in ("", "0"):
    CMatcher = None
else:
    try:
        from fstmorph.kernels._clookup import CMatcher
    except ImportError:
        CMatcher = None

Matcher = CMatcher if CMatcher is not None else PyMatcher
BACKEND = "c" if CMatcher is not None else "pure"

__all__ = ["BACKEND", "Matcher", "OutputLimitError", "PyMatcher", "CMatcher"]
