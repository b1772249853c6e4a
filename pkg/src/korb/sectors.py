"""Sector combinatorics of a weighted circle action on C^(n+1).

The weights b = (b_0, ..., b_n) determine ell = lcm(b) and a cyclic
stabilizer group of order ell.  Everything downstream reads off the
residue table r_k(s) = (b_k * s) mod ell: which coordinates the sector s
fixes, the {0,1} exponents twisting sector products, and the kernel
generator of each sector's quotient ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from .laurent import LaurentPoly, euler_class


@dataclass(frozen=True)
class WpsData:
    """Weights, group order, and the full logweight numerator table.

    logw[k][s] = (b[k] * s) % ell, so the logweight of sector s on the
    k-th coordinate is the exact fraction logw[k][s] / ell.
    """

    b: tuple[int, ...]
    ell: int
    logw: tuple[tuple[int, ...], ...]


def build_wps(b) -> WpsData:
    bt = tuple(b)
    if not bt:
        raise ValueError("weight vector must not be empty")
    for k, w in enumerate(bt):
        if not isinstance(w, int) or w < 1:
            raise ValueError(f"weight b_{k} must be a positive integer, got {w!r}")
    ell = lcm(*bt)
    logw = tuple(tuple(w * s % ell for s in range(ell)) for w in bt)
    return WpsData(bt, ell, logw)


def check_sector(d: WpsData, s: int) -> None:
    if not 0 <= s < d.ell:
        raise ValueError(f"sector index {s} out of range [0, {d.ell})")


def fixed_set(d: WpsData, s: int) -> tuple[int, ...]:
    """Coordinates k fixed by sector s, i.e. those with r_k(s) = 0."""
    check_sector(d, s)
    return tuple(k for k in range(len(d.b)) if d.logw[k][s] == 0)


def obstruction_exponent(d: WpsData, k: int, s: int, t: int) -> int:
    """(r_k(s) + r_k(t) - r_k([s+t])) / ell, always 0 or 1."""
    check_sector(d, s)
    check_sector(d, t)
    if not 0 <= k < len(d.b):
        raise ValueError(f"coordinate index {k} out of range [0, {len(d.b)})")
    row = d.logw[k]
    num = row[s] + row[t] - row[(s + t) % d.ell]
    assert num % d.ell == 0, (d.b, k, s, t)
    e = num // d.ell
    assert e in (0, 1), (d.b, k, s, t)
    return e


def obstruction_set(d: WpsData, s: int, t: int) -> tuple[int, ...]:
    """Coordinates k with obstruction exponent 1 for the pair (s, t)."""
    return tuple(
        k for k in range(len(d.b)) if obstruction_exponent(d, k, s, t) == 1
    )


def structure_coefficient(d: WpsData, s: int, t: int) -> LaurentPoly:
    """The coefficient of alpha_[s+t] in alpha_s * alpha_t, expanded.

    A product of Euler classes 1 - u^-b_k, one factor for each k whose
    obstruction exponent is 1.  Symmetric in s and t.
    """
    out = LaurentPoly.one()
    for k in obstruction_set(d, s, t):
        out = out * euler_class(d.b[k])
    return out


def kernel_generator(d: WpsData, s: int) -> LaurentPoly:
    """Generator of the sector's kernel ideal, expanded.

    The product of 1 - u^-b_k over the coordinates fixed by s.  An empty
    product gives 1: the sector misses the level set and collapses to the
    zero ring.
    """
    out = LaurentPoly.one()
    for k in fixed_set(d, s):
        out = out * euler_class(d.b[k])
    return out
