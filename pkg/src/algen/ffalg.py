"""Exact arithmetic in F_{p^s} and dense linear algebra over it.

Field elements are encoded as integers in [0, q): the element with
coefficient vector (c_0, ..., c_{s-1}) over F_p gets the code
sum(c_i * p**i).  For prime fields (s = 1) the code is the residue
itself.  All matrices are dense, row-major tuples of element codes.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .errors import (
    BadDegree,
    BadParams,
    DimensionMismatch,
    DivisionByZero,
    NonPrime,
    TooLarge,
)

# Brute-force conjugacy sweeps are refused above this group order unless
# the caller raises the cap explicitly.
CONJUGACY_CAP = 10_000

# Enumeration entry points never accept matrices larger than this.
MAX_ENUM_N = 8

# Multiplication tables are precomputed for extension fields up to this size.
_TABLE_CAP = 512

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    # Deterministic for n < 3.3e24 with these witnesses.
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_power_split(q: int) -> tuple[int, int]:
    """Return (p, e) with q = p**e, or raise BadParams."""
    if q < 2:
        raise BadParams(f"not a prime power: {q}")
    if is_prime(q):
        return q, 1
    p = None
    d = 2
    while d * d <= q:
        if q % d == 0:
            p = d
            break
        d += 1 if d == 2 else 2
    if p is None:
        raise BadParams(f"not a prime power: {q}")  # unreachable: q composite
    e = 0
    m = q
    while m % p == 0:
        m //= p
        e += 1
    if m != 1:
        raise BadParams(f"not a prime power: {q}")
    return p, e


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors by trial division (small arguments only)."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# Univariate polynomials over F_p: dense coefficient lists, low degree first.
# Used for field construction and reused by the integer-polynomial module
# for mod-p irreducibility verdicts.
# ---------------------------------------------------------------------------

def gfp_trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def gfp_mul(f: list[int], g: list[int], p: int) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return gfp_trim(out)


def gfp_mod(f: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of f modulo a monic polynomial m."""
    assert m and m[-1] == 1
    r = [c % p for c in f]
    dm = len(m) - 1
    while len(r) > dm:
        lead = r[-1]
        if lead:
            shift = len(r) - 1 - dm
            for i in range(dm):
                r[shift + i] = (r[shift + i] - lead * m[i]) % p
        r.pop()
    return gfp_trim(r)


def gfp_gcd(f: list[int], g: list[int], p: int) -> list[int]:
    """Monic gcd over F_p."""
    a, b = [c % p for c in f], [c % p for c in g]
    gfp_trim(a)
    gfp_trim(b)
    while b:
        # make b monic so gfp_mod applies
        lead_inv = pow(b[-1], p - 2, p)
        b = [c * lead_inv % p for c in b]
        a, b = b, gfp_mod(a, b, p)
    if a:
        lead_inv = pow(a[-1], p - 2, p)
        a = [c * lead_inv % p for c in a]
    return a


def gfp_powmod(f: list[int], e: int, m: list[int], p: int) -> list[int]:
    """f**e modulo the monic polynomial m."""
    result = [1]
    base = gfp_mod(f, m, p)
    while e:
        if e & 1:
            result = gfp_mod(gfp_mul(result, base, p), m, p)
        base = gfp_mod(gfp_mul(base, base, p), m, p)
        e >>= 1
    return result


def gfp_is_irreducible(f: list[int], p: int) -> bool:
    """Rabin irreducibility test for a monic f of degree >= 1 over F_p."""
    d = len(f) - 1
    assert d >= 1 and f[-1] % p == 1
    if d == 1:
        return True
    x = [0, 1]
    # x^(p^d) must reduce to x modulo f
    xp = gfp_powmod(x, p ** d, f, p)
    if xp != gfp_mod(x, f, p):
        return False
    for r in prime_factors(d):
        xe = gfp_powmod(x, p ** (d // r), f, p)
        diff = [(a - b) % p for a, b in itertools.zip_longest(xe, x, fillvalue=0)]
        if gfp_gcd(gfp_trim(diff), f, p) != [1]:
            return False
    return True


# ---------------------------------------------------------------------------
# Field contexts
# ---------------------------------------------------------------------------

class FieldCtx:
    """Immutable arithmetic context for F_{p^s}.

    The modulus (for s > 1) is the lexicographically smallest monic
    irreducible of degree s, comparing coefficient vectors low degree
    first.  This makes contexts deterministic: same (p, s), same field.
    """

    __slots__ = ("p", "s", "q", "modulus", "_mul_table", "_inv_table")

    def __init__(self, p: int, s: int, modulus: tuple[int, ...] | None):
        self.p = p
        self.s = s
        self.q = p ** s
        self.modulus = modulus
        self._mul_table = None
        self._inv_table = None
        if s > 1 and self.q <= _TABLE_CAP:
            self._build_tables()

    def __repr__(self):
        return f"FieldCtx(q={self.q})" if self.s == 1 else (
            f"FieldCtx(q={self.q}, modulus={list(self.modulus)})")

    # -- encoding ----------------------------------------------------------

    def coeffs(self, a: int) -> tuple[int, ...]:
        """Coefficient vector (c_0, ..., c_{s-1}) of an element code."""
        out = []
        for _ in range(self.s):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def from_coeffs(self, cs) -> int:
        a = 0
        for c in reversed(list(cs)):
            a = a * self.p + c % self.p
        return a

    # -- arithmetic on codes ------------------------------------------------

    def add(self, a: int, b: int) -> int:
        p = self.p
        if self.s == 1:
            return (a + b) % p
        out = 0
        mult = 1
        for _ in range(self.s):
            out += (a % p + b % p) % p * mult
            a //= p
            b //= p
            mult *= p
        return out

    def sub(self, a: int, b: int) -> int:
        p = self.p
        if self.s == 1:
            return (a - b) % p
        out = 0
        mult = 1
        for _ in range(self.s):
            out += (a % p - b % p) % p * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg(self, a: int) -> int:
        return self.sub(0, a)

    def mul(self, a: int, b: int) -> int:
        if self.s == 1:
            return a * b % self.p
        if self._mul_table is not None:
            return self._mul_table[a][b]
        return self._mul_slow(a, b)

    def _mul_slow(self, a: int, b: int) -> int:
        prod = gfp_mod(gfp_mul(list(self.coeffs(a)), list(self.coeffs(b)), self.p),
                       list(self.modulus), self.p)
        return self.from_coeffs(prod + [0] * (self.s - len(prod)))

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("no inverse of 0")
        if self.s == 1:
            return pow(a, self.p - 2, self.p)
        if self._inv_table is not None:
            return self._inv_table[a]
        return self.pow(a, self.q - 2)

    def pow(self, a: int, e: int) -> int:
        result = 1
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def _build_tables(self):
        q = self.q
        table = [[0] * q for _ in range(q)]
        for a in range(q):
            row = table[a]
            for b in range(a, q):
                v = self._mul_slow(a, b)
                row[b] = v
                table[b][a] = v
        self._mul_table = table
        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if table[a][b] == 1:
                    inv[a] = b
                    break
        self._inv_table = inv

    def elements_in_canonical_order(self) -> list[int]:
        """All element codes sorted by coefficient vector, low degree first."""
        return sorted(range(self.q), key=self.coeffs)


@lru_cache(maxsize=None)
def make_field(p: int, s: int = 1) -> FieldCtx:
    """Construct F_{p^s} with a deterministic irreducible modulus."""
    if not is_prime(p):
        raise NonPrime(f"p = {p} is not prime")
    if s < 1:
        raise BadDegree(f"extension degree must be >= 1, got {s}")
    if s == 1:
        return FieldCtx(p, 1, None)
    for low in itertools.product(range(p), repeat=s):
        f = list(low) + [1]
        if gfp_is_irreducible(f, p):
            return FieldCtx(p, s, tuple(f))
    raise AssertionError("no irreducible polynomial found")  # unreachable


def inv(ctx: FieldCtx, a: int) -> int:
    return ctx.inv(a)


def multiplicative_generator(ctx: FieldCtx) -> int:
    """Smallest element (canonical order) of multiplicative order q - 1."""
    target = ctx.q - 1
    if target == 1:
        return 1
    factors = prime_factors(target)
    for a in ctx.elements_in_canonical_order():
        if a == 0:
            continue
        if all(ctx.pow(a, target // r) != 1 for r in factors):
            return a
    raise AssertionError("F_q* is cyclic; a generator must exist")


# ---------------------------------------------------------------------------
# Dense matrices: row-major tuples of element codes.
# ---------------------------------------------------------------------------

def mat_identity(n: int) -> tuple[int, ...]:
    return tuple(1 if i == j else 0 for i in range(n) for j in range(n))


def mat_scalar(ctx: FieldCtx, n: int, c: int) -> tuple[int, ...]:
    return tuple(c if i == j else 0 for i in range(n) for j in range(n))


def mat_mul(ctx: FieldCtx, n: int, A, B) -> tuple[int, ...]:
    mul = ctx.mul
    add = ctx.add
    out = []
    for i in range(n):
        arow = A[i * n:(i + 1) * n]
        for j in range(n):
            acc = 0
            for t in range(n):
                a = arow[t]
                if a:
                    acc = add(acc, mul(a, B[t * n + j]))
            out.append(acc)
    return tuple(out)


def mat_transpose(n: int, A) -> tuple[int, ...]:
    return tuple(A[j * n + i] for i in range(n) for j in range(n))


def mat_rank(ctx: FieldCtx, n: int, A) -> int:
    rows = [list(A[i * n:(i + 1) * n]) for i in range(n)]
    return _echelon_rank(ctx, rows, n)


def _echelon_rank(ctx: FieldCtx, rows, width: int) -> int:
    rank = 0
    col = 0
    while col < width and rank < len(rows):
        piv = None
        for r in range(rank, len(rows)):
            if rows[r][col]:
                piv = r
                break
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv_p = ctx.inv(rows[rank][col])
        rows[rank] = [ctx.mul(inv_p, v) for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [ctx.sub(x, ctx.mul(f, y))
                           for x, y in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


class FqEchelon:
    """Incremental row echelon over F_q: tracks span dimension as rows arrive."""

    __slots__ = ("ctx", "width", "pivots")

    def __init__(self, ctx: FieldCtx, width: int):
        self.ctx = ctx
        self.width = width
        self.pivots: dict[int, list[int]] = {}

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def insert(self, vec) -> bool:
        """Reduce vec against the basis; insert the remainder. True if new."""
        ctx = self.ctx
        v = list(vec)
        for j in range(self.width):
            a = v[j]
            if not a:
                continue
            row = self.pivots.get(j)
            if row is None:
                inv_a = ctx.inv(a)
                self.pivots[j] = [ctx.mul(inv_a, x) for x in v]
                return True
            v = [ctx.sub(x, ctx.mul(a, y)) for x, y in zip(v, row)]
        return False


def span_dimension(ctx: FieldCtx, vectors) -> int:
    """Rank of the span of coordinate vectors over F_q; 0 for no vectors."""
    vectors = list(vectors)
    if not vectors:
        return 0
    width = len(vectors[0])
    for v in vectors:
        if len(v) != width:
            raise DimensionMismatch("vectors of unequal length")
    ech = FqEchelon(ctx, width)
    for v in vectors:
        ech.insert(v)
    return ech.dim


# ---------------------------------------------------------------------------
# Group orders and brute-force conjugacy
# ---------------------------------------------------------------------------

def group_orders(n: int, q: int) -> tuple[int, int]:
    """(|GL_n(F_q)|, |PGL_n(F_q)|) = (prod(q^n - q^i), gl / (q - 1))."""
    if n < 1:
        raise BadParams(f"n must be >= 1, got {n}")
    prime_power_split(q)
    gl = 1
    qn = q ** n
    for i in range(n):
        gl *= qn - q ** i
    assert gl % (q - 1) == 0
    return gl, gl // (q - 1)


@lru_cache(maxsize=32)
def _gl_codes(p: int, s: int, n: int, cap: int) -> tuple[tuple[int, ...], ...]:
    ctx = make_field(p, s)
    gl, _ = group_orders(n, ctx.q)
    if gl > cap:
        raise TooLarge(f"|GL_{n}(F_{ctx.q})| = {gl} exceeds cap {cap}")
    if n > MAX_ENUM_N:
        raise TooLarge(f"matrix size {n} above enumeration limit {MAX_ENUM_N}")
    out = []
    for entries in itertools.product(range(ctx.q), repeat=n * n):
        if mat_rank(ctx, n, entries) == n:
            out.append(entries)
    assert len(out) == gl
    return tuple(out)


def gl_elements(ctx: FieldCtx, n: int, cap: int = CONJUGACY_CAP):
    """All invertible n x n matrices over ctx, in code order."""
    return _gl_codes(ctx.p, ctx.s, n, cap)


def frobenius_mat(ctx: FieldCtx, n: int, A, base_q: int) -> tuple[int, ...]:
    """Apply x -> x^base_q to every entry."""
    return tuple(ctx.pow(a, base_q) for a in A)


def are_conjugate_tuples(ctx: FieldCtx, t1, t2, include_galois: bool = False,
                         base_q: int | None = None,
                         cap: int = CONJUGACY_CAP) -> bool:
    """True iff some g in GL_n (optionally composed with a Frobenius power
    over the base field of size base_q) maps t1 coordinatewise to t2.

    Uses g*a == b*g to avoid inverses.  base_q defaults to p, giving the
    full automorphism group over the prime field.
    """
    if len(t1) != len(t2):
        raise DimensionMismatch("tuples of different length")
    if not t1:
        return True
    sz = len(t1[0])
    n = 1
    while n * n < sz:
        n += 1
    if n * n != sz or any(len(a) != sz for a in itertools.chain(t1, t2)):
        raise DimensionMismatch("entries are not square matrices of equal size")

    if base_q is None:
        base_q = ctx.p
    if include_galois and ctx.s > 1:
        # Galois twists of t1: powers of the Frobenius x -> x^base_q.
        twists = []
        tw = tuple(t1)
        for _ in range(_galois_order(ctx, base_q)):
            twists.append(tw)
            tw = tuple(frobenius_mat(ctx, n, a, base_q) for a in tw)
    else:
        twists = [tuple(t1)]

    for g in gl_elements(ctx, n, cap):
        for tw in twists:
            ok = True
            for a, b in zip(tw, t2):
                if mat_mul(ctx, n, g, a) != mat_mul(ctx, n, b, g):
                    ok = False
                    break
            if ok:
                return True
    return False


def _galois_order(ctx: FieldCtx, base_q: int) -> int:
    """Order of Gal(F_{ctx.q} / F_{base_q})."""
    s = 0
    v = 1
    while v < ctx.q:
        v *= base_q
        s += 1
    if v != ctx.q:
        raise BadParams(f"{base_q} is not a subfield size of {ctx.q}")
    return s
