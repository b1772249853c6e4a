"""Per-sector quotient rings and the full orbifold K-theory ring.

Each sector s carries the quotient Z[u,u^-1] / <kernel generator>.  The
normalized generator is monic with constant term +-1 (it is a product of
u^b_k - 1 factors up to sign), so u is invertible in the quotient and the
quotient is a free Z-module with basis 1, u, ..., u^(rank-1).  Elements of
the full ring are tuples of such residues, one per sector, multiplied by
twisting ordinary products with Euler-class structure coefficients.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .laurent import LaurentPoly, MonicPoly, divmod_monic, normalize
from .sectors import (
    WpsData,
    check_sector,
    fixed_set,
    kernel_generator,
    obstruction_exponent,
    structure_coefficient,
)


@dataclass(frozen=True)
class SectorRing:
    """One sector's quotient ring data.

    inv_u caches the residue of u^-1 modulo gmonic, which exists because
    the constant term of gmonic is +-1.  rank 0 marks a collapsed sector
    (generator 1, zero ring).
    """

    sector: int
    gen: LaurentPoly
    gmonic: MonicPoly
    rank: int
    inv_u: LaurentPoly


@dataclass(frozen=True)
class KOrbElement:
    """An element of the full ring: one reduced residue per sector."""

    weights: tuple[int, ...]
    comps: tuple[LaurentPoly, ...]

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.comps)

    def __add__(self, other: "KOrbElement") -> "KOrbElement":
        if self.weights != other.weights:
            raise ValueError("cannot add elements over different weights")
        return KOrbElement(
            self.weights, tuple(a + b for a, b in zip(self.comps, other.comps))
        )

    def __sub__(self, other: "KOrbElement") -> "KOrbElement":
        return self + (-other)

    def __neg__(self) -> "KOrbElement":
        return KOrbElement(self.weights, tuple(-c for c in self.comps))


@dataclass(frozen=True)
class Presentation:
    """Generators and relations over Z[u,u^-1].

    relations_i holds one entry (s, t, target, coefficient) per unordered
    pair s <= t: the relation alpha_s alpha_t - coeff * alpha_target.
    relations_j holds (s, generator): the relation generator * alpha_s.
    The unit relation kills alpha_0 - 1.
    """

    weights: tuple[int, ...]
    ell: int
    relations_i: tuple[tuple[int, int, int, LaurentPoly], ...]
    relations_j: tuple[tuple[int, LaurentPoly], ...]
    unit_relation: str = "alpha_0 - 1"


@dataclass(frozen=True)
class TorsionEntry:
    sector: int
    rank: int
    monic: bool
    constant: int

    @property
    def free(self) -> bool:
        return self.monic and self.constant in (1, -1)


@dataclass(frozen=True)
class TorsionReport:
    entries: tuple[TorsionEntry, ...]
    passed: bool


@dataclass(frozen=True)
class VerifyReport:
    weights: tuple[int, ...]
    ell: int
    trials: int
    seed: int
    exponent_checks: int
    failures: tuple[str, ...]
    passed: bool


def _inverse_of_u(gm: MonicPoly) -> LaurentPoly:
    # u * v = 1 mod g where g = g(0) + u*h(u) and g(0) = +-1, so
    # v = -g(0) * h(u).
    if gm.degree == 0:
        return LaurentPoly.zero()
    g0 = gm.constant
    assert g0 in (1, -1), gm
    return LaurentPoly({e - 1: -g0 * c for e, c in enumerate(gm.coeffs) if e > 0})


def build_sector_rings(d: WpsData) -> tuple[SectorRing, ...]:
    """All ell sector rings; generators are shared between sectors with
    the same fixed coordinate set, so large ell stays cheap."""
    cache: dict[tuple[int, ...], tuple[LaurentPoly, MonicPoly, int, LaurentPoly]] = {}
    rings = []
    for s in range(d.ell):
        ks = fixed_set(d, s)
        hit = cache.get(ks)
        if hit is None:
            gen = kernel_generator(d, s)
            gm = normalize(gen)
            hit = (gen, gm, gm.degree, _inverse_of_u(gm))
            cache[ks] = hit
        gen, gm, rank, inv = hit
        rings.append(SectorRing(s, gen, gm, rank, inv))
    return tuple(rings)


def reduce(ring: SectorRing, x: LaurentPoly) -> LaurentPoly:
    """Canonical residue of x modulo the sector ideal, degree < rank.

    Negative exponents are cleared by a u^M shift, then divmod by the
    monic generator, then M multiplications by the cached inverse of u.

    >>> from korb.sectors import build_wps
    >>> rings = build_sector_rings(build_wps((1, 2, 4)))
    >>> reduce(rings[1], LaurentPoly({-1: 1}))
    u^3
    """
    if ring.rank == 0 or x.is_zero:
        return LaurentPoly.zero()
    m = x.min_exp
    shift = -m if m < 0 else 0
    _, r = divmod_monic(x.shifted(shift), ring.gmonic)
    for _ in range(shift):
        if r.is_zero:
            break
        _, r = divmod_monic(r * ring.inv_u, ring.gmonic)
    return r


def zero_element(d: WpsData) -> KOrbElement:
    return KOrbElement(d.b, (LaurentPoly.zero(),) * d.ell)


def unit_element(d: WpsData) -> KOrbElement:
    # sector 0 fixes every coordinate, so its rank is sum(b) >= 1 and the
    # residue 1 is already reduced
    comps = [LaurentPoly.zero()] * d.ell
    comps[0] = LaurentPoly.one()
    return KOrbElement(d.b, tuple(comps))


def alpha(rings: tuple[SectorRing, ...], d: WpsData, s: int) -> KOrbElement:
    """The sector generator: residue 1 in sector s, zero elsewhere.
    Collapsed sectors give the zero element."""
    check_sector(d, s)
    comps = [LaurentPoly.zero()] * d.ell
    comps[s] = reduce(rings[s], LaurentPoly.one())
    return KOrbElement(d.b, tuple(comps))


def element_from_residues(
    rings: tuple[SectorRing, ...], d: WpsData, residues: dict[int, LaurentPoly]
) -> KOrbElement:
    comps = [LaurentPoly.zero()] * d.ell
    for s, p in residues.items():
        check_sector(d, s)
        comps[s] = reduce(rings[s], p)
    return KOrbElement(d.b, tuple(comps))


def _star(rings, ell, ctable, x: KOrbElement, y: KOrbElement) -> KOrbElement:
    out = [LaurentPoly.zero()] * ell
    for s, xs in enumerate(x.comps):
        if xs.is_zero:
            continue
        for t, yt in enumerate(y.comps):
            if yt.is_zero:
                continue
            tgt = (s + t) % ell
            ring = rings[tgt]
            if ring.rank == 0:
                continue
            out[tgt] = out[tgt] + reduce(ring, xs * yt * ctable[s][t])
    return KOrbElement(x.weights, tuple(out))


def _structure_table(d: WpsData) -> list[list[LaurentPoly]]:
    tab = [[None] * d.ell for _ in range(d.ell)]
    for s in range(d.ell):
        for t in range(s, d.ell):
            c = structure_coefficient(d, s, t)
            tab[s][t] = c
            tab[t][s] = c
    return tab


def star_multiply(
    rings: tuple[SectorRing, ...], d: WpsData, x: KOrbElement, y: KOrbElement
) -> KOrbElement:
    """Product in the full ring: convolve sectors, twist by the structure
    coefficient, reduce in the target sector.

    >>> from korb.sectors import build_wps
    >>> d = build_wps((1, 2, 4))
    >>> rings = build_sector_rings(d)
    >>> star_multiply(rings, d, alpha(rings, d, 1), alpha(rings, d, 2)).comps
    (0, 0, 0, 1)
    """
    if x.weights != d.b or y.weights != d.b:
        raise ValueError("elements do not belong to this weight data")
    return _star(rings, d.ell, _structure_table(d), x, y)


def generator_table(
    rings: tuple[SectorRing, ...], d: WpsData
) -> tuple[tuple[int, int, int, LaurentPoly], ...]:
    """Rows (s, t, target, coefficient) for all pairs 0 <= s <= t < ell.
    Coefficients are kept unreduced, exactly as the sector product rule
    writes them."""
    rows = []
    for s in range(d.ell):
        for t in range(s, d.ell):
            rows.append((s, t, (s + t) % d.ell, structure_coefficient(d, s, t)))
    return tuple(rows)


def presentation(d: WpsData) -> Presentation:
    rel_i = []
    for s in range(d.ell):
        for t in range(s, d.ell):
            rel_i.append((s, t, (s + t) % d.ell, structure_coefficient(d, s, t)))
    rel_j = [(s, kernel_generator(d, s)) for s in range(d.ell)]
    return Presentation(d.b, d.ell, tuple(rel_i), tuple(rel_j))


def total_rank(rings: tuple[SectorRing, ...]) -> int:
    return sum(r.rank for r in rings)


def torsion_report(rings: tuple[SectorRing, ...]) -> TorsionReport:
    """Freeness certificate: every normalized generator must be monic with
    constant term +-1, making each sector quotient a free Z-module."""
    entries = tuple(
        TorsionEntry(r.sector, r.rank, r.gmonic.monic, r.gmonic.constant)
        for r in rings
    )
    return TorsionReport(entries, all(e.free for e in entries))


@lru_cache(maxsize=None)
def _cocycle_class_check(ell: int, g: int) -> tuple[int, tuple[int, int, int] | None]:
    """Exhaustive cocycle check for the residue pattern r(s) = g*s mod ell.

    The exponent table of a weight b_k depends only on s mod (ell/g) with
    g = gcd(b_k, ell), up to the unit reindexing s -> (b_k/g)*s, so one
    pass over the period covers every triple in (Z_ell)^3 for every
    weight in that divisor class.
    """
    m = ell // g
    r = [g * s for s in range(m)]

    def e(s: int, t: int) -> int:
        num = r[s] + r[t] - r[(s + t) % m]
        assert num % ell == 0
        v = num // ell
        assert v in (0, 1)
        return v

    etab = [[e(s, t) for t in range(m)] for s in range(m)]
    count = 0
    for s in range(m):
        row_s = etab[s]
        for t in range(m):
            c0 = row_s[t]
            row_st = etab[(s + t) % m]
            row_t = etab[t]
            for w in range(m):
                count += 1
                if c0 + row_st[w] != row_s[(t + w) % m] + row_t[w]:
                    return count, (s, t, w)
    return count, None


def random_element(
    rings: tuple[SectorRing, ...], d: WpsData, rng: random.Random
) -> KOrbElement:
    """Residue coefficients uniform in [-9, 9], independently per sector
    and degree; failures reproduce from the seed."""
    comps = []
    for ring in rings:
        comps.append(
            LaurentPoly({e: rng.randint(-9, 9) for e in range(ring.rank)})
        )
    return KOrbElement(d.b, tuple(comps))


def check_exponents(d: WpsData) -> tuple[int, tuple[str, ...]]:
    """Exhaustive obstruction-exponent battery.

    Every exponent must be 0 or 1, symmetric, and zero against the
    identity sector; the cocycle identity
    e(s,t) + e([s+t],w) = e(s,[t+w]) + e(t,w) is checked over all triples,
    once per divisor class of (b_k, ell).  Returns the number of checks
    and any failure descriptions.
    """
    failures: list[str] = []
    checks = 0
    nb = len(d.b)
    for k in range(nb):
        for s in range(d.ell):
            for t in range(s, d.ell):
                e = obstruction_exponent(d, k, s, t)
                checks += 1
                if e not in (0, 1):
                    failures.append(f"exponent e_{k}({s},{t}) = {e} not in {{0,1}}")
                if e != obstruction_exponent(d, k, t, s):
                    failures.append(f"exponent e_{k} not symmetric at ({s},{t})")
            checks += 1
            if obstruction_exponent(d, k, 0, s) != 0:
                failures.append(f"unit law fails: e_{k}(0,{s}) != 0")
    seen: set[int] = set()
    for k in range(nb):
        cls = gcd(d.b[k], d.ell)
        if cls in seen:
            continue
        seen.add(cls)
        count, bad = _cocycle_class_check(d.ell, cls)
        checks += count
        if bad is not None:
            failures.append(
                f"cocycle identity fails for weight class gcd={cls} at {bad}"
            )
    return checks, tuple(failures)


def verify(d: WpsData, trials: int = 500, seed: int = 0) -> VerifyReport:
    """Check the ring laws two ways.

    Exhaustively, via check_exponents.  Randomly, via seeded trials of
    commutativity, associativity, distributivity, and the unit law on
    elements with random residues.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    checks, exp_failures = check_exponents(d)
    failures = list(exp_failures)

    rings = build_sector_rings(d)
    ctable = _structure_table(d)
    one = unit_element(d)
    rng = random.Random(seed)
    for i in range(trials):
        x = random_element(rings, d, rng)
        y = random_element(rings, d, rng)
        z = random_element(rings, d, rng)
        xy = _star(rings, d.ell, ctable, x, y)
        if xy != _star(rings, d.ell, ctable, y, x):
            failures.append(f"commutativity fails at trial {i}")
        lhs = _star(rings, d.ell, ctable, xy, z)
        rhs = _star(rings, d.ell, ctable, x, _star(rings, d.ell, ctable, y, z))
        if lhs != rhs:
            failures.append(f"associativity fails at trial {i}")
        if _star(rings, d.ell, ctable, x, y + z) != xy + _star(
            rings, d.ell, ctable, x, z
        ):
            failures.append(f"distributivity fails at trial {i}")
        if _star(rings, d.ell, ctable, one, x) != x:
            failures.append(f"unit law fails at trial {i}")
    return VerifyReport(
        d.b, d.ell, trials, seed, checks, tuple(failures), not failures
    )
