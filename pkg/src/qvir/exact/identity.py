"""Equality of rational functions, symbolic or by random evaluation."""
from __future__ import annotations

import random

from .modular import DEFAULT_PRIME
from .ratfunc import PoleError, RatFunc


def random_points(names, k: int, p: int = DEFAULT_PRIME, seed: int = 0):
    rng = random.Random(seed)
    return [{n: rng.randrange(2, p - 1) for n in names} for _ in range(k)]


def modular_equal(f: RatFunc, g: RatFunc, points: int = 3, p: int = DEFAULT_PRIME,
                  seed: int = 0, max_retries: int = 20):
    """Compare f and g at ``points`` random residues; returns (ok, witness).

    Points where either side has a pole are redrawn (bounded).  The test
    never reports inequality for structurally equal inputs.
    """
    names = sorted(set(f.variables()) | set(g.variables()))
    rng = random.Random(seed)
    done = 0
    retries = 0
    while done < points:
        pt = {n: rng.randrange(2, p - 1) for n in names}
        try:
            a = f.evaluate(pt, p)
            b = g.evaluate(pt, p)
        except PoleError:
            retries += 1
            if retries > max_retries:
                raise
            continue
        if a != b:
            return False, {"point": pt, "left": a, "right": b, "prime": p}
        done += 1
    return True, None


def equal(f: RatFunc, g: RatFunc, mode: str = "symbolic", **kw) -> bool:
    if mode == "symbolic":
        return f == g
    if mode == "modular":
        return modular_equal(f, g, **kw)[0]
    raise ValueError(f"unknown equality mode {mode!r}")
