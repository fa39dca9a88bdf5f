"""Pure-Python hot kernels for sparse integer-coefficient Laurent polynomials.

Monomials are tuples of ints, coefficients are Python ints.  A compiled twin
of this module (``_kern_c``) is selected at import time by :mod:`qmm.kernels`
when it has been built; both expose the same functions.
"""

from __future__ import annotations

from math import gcd

BACKEND = "python"


def dict_mul(a: dict, b: dict) -> dict:
    """Convolution product of two sparse int-coefficient monomial dicts."""
    if len(a) > len(b):
        a, b = b, a
    out: dict = {}
    get = out.get
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = tuple(x + y for x, y in zip(ka, kb))
            c = get(k, 0) + ca * cb
            if c:
                out[k] = c
            elif k in out:
                del out[k]
    return out


def dict_addmul(out: dict, a: dict, m: int) -> dict:
    """In-place out += m * a for int-coefficient dicts."""
    if m == 0:
        return out
    get = out.get
    for k, c in a.items():
        v = get(k, 0) + m * c
        if v:
            out[k] = v
        elif k in out:
            del out[k]
    return out


def dict_content(a: dict) -> int:
    """Positive gcd of all coefficients (0 for the empty dict)."""
    g = 0
    for c in a.values():
        g = gcd(g, c)
        if g == 1:
            return 1
    return g


def dict_scale_exact(a: dict, num: int, den: int) -> dict:
    """Return a scaled by num/den; the division must be exact per entry."""
    out = {}
    for k, c in a.items():
        v = c * num
        if den != 1:
            q, r = divmod(v, den)
            if r:
                raise ArithmeticError("inexact coefficient scaling")
            v = q
        if v:
            out[k] = v
    return out
