"""Backend selection.

The polynomial kernel and the prime-field scalars come either from FLINT
(via python-flint) or from a pure-Python implementation.  The choice is
made once, at import time, from the ``QVIR_BACKEND`` environment variable
(``auto``, ``flint`` or ``pure``; default ``auto``).
"""
from __future__ import annotations

import os

from .modular import ModInt

ALPHABET = ("u", "v", "w", "a", "h", "x", "e1", "e2", "b", "hb", "c", "hp", "y")

_requested = os.environ.get("QVIR_BACKEND", "auto").strip().lower() or "auto"
if _requested not in ("auto", "flint", "pure"):
    raise ImportError(f"QVIR_BACKEND must be auto, flint or pure, not {_requested!r}")

_poly_mod = None
if _requested in ("auto", "flint"):
    try:
        from . import _poly_flint as _poly_mod
    except ImportError:
        if _requested == "flint":
            raise
if _poly_mod is None:
    from . import _poly_pure as _poly_mod

BACKEND = _poly_mod.NAME
RING = _poly_mod.PolyRing(ALPHABET)

if BACKEND == "flint":
    import flint

    def modint(value: int, p: int):
        return flint.nmod(value, p)

    def is_prime(n: int) -> bool:
        return bool(flint.fmpz(n).is_prime())
else:
    from sympy import isprime

    def modint(value: int, p: int):
        return ModInt(value, p)

    def is_prime(n: int) -> bool:
        return bool(isprime(n))


def make_ring(backend: str):
    """Build a ring for an explicitly named backend (used by the benchmark)."""
    if backend == "flint":
        from . import _poly_flint as mod
    elif backend == "pure":
        from . import _poly_pure as mod
    else:
        raise ValueError(backend)
    return mod.PolyRing(ALPHABET)
