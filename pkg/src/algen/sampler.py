"""Empirical densities: seeded box sampling and exhaustive grid counts.

The random source is SplitMix64.  Every sample index gets its own
substream seeded by mix64(seed XOR ((index + 1) * GOLDEN mod 2^64)), so
results are reproducible for a fixed seed no matter how the sample range
is sharded across workers.  Coordinates are drawn uniformly from the
2N+1 integers of [-N, N] by rejection, so there is no modulo bias.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import genz
from .errors import BadParams, TooLarge
from .genff import AlgebraShape, enum_cap

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _mix64(z: int) -> int:
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


class SplitMix64:
    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next64(self) -> int:
        self.state = (self.state + _GOLDEN) & _MASK64
        return _mix64(self.state)

    def uniform(self, m: int) -> int:
        """Uniform draw from [0, m) by rejection."""
        bound = (1 << 64) - ((1 << 64) % m)
        while True:
            r = self.next64()
            if r < bound:
                return r % m


def substream(seed: int, index: int) -> SplitMix64:
    return SplitMix64(_mix64(seed ^ ((index + 1) * _GOLDEN & _MASK64)))


@dataclass(frozen=True)
class BoxModel:
    """Cube [-N, N]^D sampling plan: half-width, seed, and sample count."""

    N: int
    seed: int
    samples: int = 1

    def __post_init__(self):
        if self.N < 0 or self.samples < 0:
            raise BadParams("half-width and sample count must be >= 0")


@dataclass(frozen=True)
class DensityEstimate:
    hits: int
    trials: int
    estimate: Fraction
    ci95_halfwidth: float

    def __post_init__(self):
        assert 0 <= self.hits <= self.trials
        assert self.estimate == Fraction(self.hits, self.trials)


def sample_tuple(shape: AlgebraShape, k: int, box: BoxModel, index: int = 0):
    """Draw one k-tuple with all k * rank coordinates uniform on [-N, N].

    Coordinates are drawn element by element, slot by slot, row-major,
    from the substream of (box.seed, index).
    """
    rng = substream(box.seed, index)
    m = 2 * box.N + 1
    sizes = shape.slot_sizes()
    out = []
    for _ in range(k):
        elem = []
        for n in sizes:
            elem.append(tuple(rng.uniform(m) - box.N for _ in range(n * n)))
        out.append(tuple(elem))
    return tuple(out)


def _mc_shard(args) -> int:
    blocks, k, N, seed, lo, hi = args
    shape = AlgebraShape(blocks, None)
    box = BoxModel(N, seed)
    hits = 0
    for i in range(lo, hi):
        t = sample_tuple(shape, k, box, i)
        if genz.generates_Z(shape, t).generates:
            hits += 1
    return hits


def mc_density(shape: AlgebraShape, k: int, box: BoxModel,
               predicate=None, threads: int = 1) -> DensityEstimate:
    """Monte-Carlo estimate of the density of generating k-tuples.

    The default predicate is Z-algebra generation via the lattice closure;
    a custom predicate (tuple -> bool) forces single-threaded execution.
    """
    if box.samples < 1:
        raise BadParams("need at least one sample")
    trials = box.samples
    if predicate is None and threads > 1 and shape.ctx is None:
        shard_count = 4 * threads
        bounds = [trials * i // shard_count for i in range(shard_count + 1)]
        shards = [(shape.blocks, k, box.N, box.seed, lo, hi)
                  for lo, hi in zip(bounds, bounds[1:])]
        from .parutil import map_shards
        hits = sum(map_shards(_mc_shard, shards, threads))
    else:
        if predicate is None:
            predicate = lambda t: genz.generates_Z(shape, t).generates
        hits = 0
        for i in range(trials):
            if predicate(sample_tuple(shape, k, box, i)):
                hits += 1
    phat = hits / trials
    ci = 1.96 * math.sqrt(phat * (1 - phat) / trials)
    return DensityEstimate(hits, trials, Fraction(hits, trials), ci)


# ---------------------------------------------------------------------------
# Exhaustive polynomial-system densities over integer boxes
# ---------------------------------------------------------------------------

def normalize_poly(poly, nvars: int | None = None):
    """Accept {exps: coeff} mappings or (exps, coeff) pair lists; return a
    sorted tuple of (exps, coeff) with consistent arity and no zero terms."""
    items = poly.items() if hasattr(poly, "items") else poly
    terms = []
    for exps, coeff in items:
        exps = tuple(int(e) for e in exps)
        coeff = int(coeff)
        if any(e < 0 for e in exps):
            raise BadParams("exponents must be >= 0")
        if nvars is None:
            nvars = len(exps)
        elif len(exps) != nvars:
            raise BadParams("inconsistent variable counts across terms")
        if coeff:
            terms.append((exps, coeff))
    if nvars is None:
        raise BadParams("cannot infer the variable count of an empty polynomial")
    return tuple(sorted(terms)), nvars


def _normalize_system(polys):
    nvars = None
    system = []
    for poly in polys:
        terms, nvars = normalize_poly(poly, nvars)
        system.append(terms)
    if not system:
        raise BadParams("need at least one polynomial")
    return system, nvars


def _value_bound(terms, N: int) -> int:
    return sum(abs(c) * max(N, 1) ** sum(exps) for exps, c in terms)


def _eval_last_axis(terms, fixed, xs):
    """Evaluate at (fixed..., xs) with numpy Horner over the last variable."""
    by_deg: dict[int, int] = {}
    for exps, c in terms:
        scalar = c
        for v, e in zip(fixed, exps[:-1]):
            if e:
                scalar *= v ** e
        d = exps[-1]
        by_deg[d] = by_deg.get(d, 0) + scalar
    if not by_deg:
        return np.zeros_like(xs)
    maxd = max(by_deg)
    acc = np.full_like(xs, by_deg.get(maxd, 0))
    for d in range(maxd - 1, -1, -1):
        acc = acc * xs + by_deg.get(d, 0)
    return acc


def exhaustive_poly_density(polys, N: int, cap: int | None = None) -> Fraction:
    """Exact fraction of points x in [-N, N]^n where the values
    f_1(x), ..., f_s(x) generate the unit ideal of Z, i.e. their gcd is 1.

    The result is a rational with denominator (2N+1)^n exactly.
    """
    system, nvars = _normalize_system(polys)
    if cap is None:
        cap = enum_cap()
    total = (2 * N + 1) ** nvars
    if total > cap:
        raise TooLarge(f"{total} grid points exceed enumeration cap {cap}")
    for terms in system:
        if _value_bound(terms, N) >= 2 ** 62:
            return _exhaustive_bigint(system, nvars, N, total)
    xs = np.arange(-N, N + 1, dtype=np.int64)
    count = 0
    for fixed in itertools.product(range(-N, N + 1), repeat=nvars - 1):
        g = None
        for terms in system:
            vals = np.abs(_eval_last_axis(terms, fixed, xs))
            g = vals if g is None else np.gcd(g, vals)
        count += int(np.count_nonzero(g == 1))
    return Fraction(count, total)


def _exhaustive_bigint(system, nvars, N, total) -> Fraction:
    count = 0
    for point in itertools.product(range(-N, N + 1), repeat=nvars):
        g = 0
        for terms in system:
            v = 0
            for exps, c in terms:
                t = c
                for x, e in zip(point, exps):
                    t *= x ** e
                v += t
            g = math.gcd(g, abs(v))
            if g == 1:
                break
        if g == 1:
            count += 1
    return Fraction(count, total)


def local_zero_count(polys, p: int, n: int | None = None,
                     cap: int | None = None) -> int:
    """Number of common zeros of the system in F_p^n, by enumeration."""
    from .ffalg import is_prime

    if not is_prime(p):
        raise BadParams(f"p = {p} is not prime")
    system, nvars = _normalize_system(polys)
    if n is not None and n != nvars:
        raise BadParams(f"system has {nvars} variables, not {n}")
    if cap is None:
        cap = enum_cap()
    if p ** nvars > cap:
        raise TooLarge(f"{p ** nvars} points exceed enumeration cap {cap}")
    xs = np.arange(p, dtype=np.int64)
    reduced = [tuple((exps, c % p) for exps, c in terms) for terms in system]
    count = 0
    for fixed in itertools.product(range(p), repeat=nvars - 1):
        mask = None
        for terms in reduced:
            vals = _eval_mod_last_axis(terms, fixed, xs, p)
            zero = vals == 0
            mask = zero if mask is None else (mask & zero)
        count += int(np.count_nonzero(mask))
    return count


def _eval_mod_last_axis(terms, fixed, xs, p: int):
    by_deg: dict[int, int] = {}
    for exps, c in terms:
        scalar = c % p
        for v, e in zip(fixed, exps[:-1]):
            if e:
                scalar = scalar * pow(v, e, p) % p
        d = exps[-1]
        by_deg[d] = (by_deg.get(d, 0) + scalar) % p
    if not by_deg:
        return np.zeros_like(xs)
    maxd = max(by_deg)
    acc = np.full_like(xs, by_deg.get(maxd, 0))
    for d in range(maxd - 1, -1, -1):
        acc = (acc * xs + by_deg.get(d, 0)) % p
    return acc
