"""Generation certification over Z.

A tuple generates M_{n_1}(Z)^{m_1} x ... as a Z-algebra iff the lattice
spanned by all monomials in its entries (including 1) is the full integer
lattice.  The closure is computed by Noetherian-chain iteration: adjoin
left products by the generators and re-reduce until the lattice stops
growing.  The Hermite normal form of the final lattice certifies the
outcome; its index is 1 exactly when the tuple generates, and the prime
factors of the index are the residue characteristics where generation
fails.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import ffalg, genff
from .errors import (
    BadParams,
    CertificationFailed,
    FactorizationIncomplete,
    ShapeMismatch,
    UnsupportedSize,
)
from .genff import AlgebraShape, shape_over_Z

TRIAL_DIVISION_BOUND = 10 ** 6


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


# ---------------------------------------------------------------------------
# Integer row lattices
# ---------------------------------------------------------------------------

class _ZEchelon:
    """Row echelon over Z with positive pivots, one row per pivot column."""

    __slots__ = ("D", "rows")

    def __init__(self, D: int):
        self.D = D
        self.rows: dict[int, list[int]] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def index_if_full(self) -> int:
        """Product of pivots when full rank, else 0."""
        if len(self.rows) < self.D:
            return 0
        out = 1
        for j, row in self.rows.items():
            out *= row[j]
        return out

    def add(self, vec) -> bool:
        """Add a vector to the lattice; True iff the lattice grew."""
        D = self.D
        rows = self.rows
        v = list(vec)
        changed = False
        for j in range(D):
            a = v[j]
            if not a:
                continue
            row = rows.get(j)
            if row is None:
                if a < 0:
                    v = [-x for x in v]
                rows[j] = v
                return True
            b = row[j]
            q, r = divmod(a, b)
            if r == 0:
                if q:
                    for t in range(j, D):
                        v[t] -= q * row[t]
            else:
                x, y, g = _xgcd(b, a)
                bg = b // g
                ag = a // g
                newrow = [0] * j
                newv = [0] * j
                for t in range(j, D):
                    rt, vt = row[t], v[t]
                    newrow.append(x * rt + y * vt)
                    newv.append(bg * vt - ag * rt)
                rows[j] = newrow
                v = newv
                changed = True
        return changed

    def reduce(self, vec) -> list[int]:
        """Residue of vec modulo the lattice (no insertion)."""
        v = list(vec)
        for j in range(self.D):
            a = v[j]
            if not a:
                continue
            row = self.rows.get(j)
            if row is None:
                continue
            q = a // row[j]
            if q:
                for t in range(j, self.D):
                    v[t] -= q * row[t]
        return v

    def contains(self, vec) -> bool:
        v = list(vec)
        for j in range(self.D):
            a = v[j]
            if not a:
                continue
            row = self.rows.get(j)
            if row is None or a % row[j]:
                return False
            q = a // row[j]
            for t in range(j, self.D):
                v[t] -= q * row[t]
        return True

    def canonical_basis(self) -> tuple[tuple[int, ...], ...]:
        """Hermite normal form: entries above each pivot reduced into [0, pivot)."""
        cols = sorted(self.rows)
        basis = [list(self.rows[c]) for c in cols]
        for ri, c in enumerate(cols):
            prow = basis[ri]
            piv = prow[c]
            for r2 in range(ri):
                q = basis[r2][c] // piv
                if q:
                    basis[r2] = [x - q * y for x, y in zip(basis[r2], prow)]
        return tuple(tuple(r) for r in basis)


@dataclass(frozen=True)
class Lattice:
    """Canonical HNF basis of a submodule of Z^D."""

    D: int
    basis: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def index(self) -> int:
        """Product of pivots when full rank; 0 when rank-deficient."""
        if self.rank < self.D:
            return 0
        out = 1
        for p in self.pivots():
            out *= p
        return out

    def pivots(self) -> tuple[int, ...]:
        out = []
        for row in self.basis:
            for v in row:
                if v:
                    out.append(v)
                    break
        return tuple(out)


def hnf(rows, D: int | None = None) -> Lattice:
    """Canonical Hermite normal form of the row span.

    The ambient rank is taken from the rows; pass D explicitly when the
    row list may be empty.
    """
    rows = [list(r) for r in rows]
    if not rows and D is None:
        raise BadParams("no rows; pass D to fix the ambient rank")
    if D is None:
        D = len(rows[0])
    ech = _ZEchelon(D)
    for r in rows:
        if len(r) != D:
            raise BadParams("rows of unequal length")
        ech.add(r)
    return Lattice(D, ech.canonical_basis())


# ---------------------------------------------------------------------------
# Monomial closure over Z
# ---------------------------------------------------------------------------

def _validate_z_tuple(shape: AlgebraShape, t):
    if shape.ctx is not None:
        raise ShapeMismatch("expected a Z-side shape")
    sizes = shape.slot_sizes()
    gens = []
    for elem in t:
        if len(elem) != len(sizes):
            raise ShapeMismatch("element does not match shape slots")
        mats = []
        for mat, n in zip(elem, sizes):
            mat = tuple(int(v) for v in mat)
            if len(mat) != n * n:
                raise ShapeMismatch("matrix size does not match shape")
            mats.append(mat)
        gens.append(tuple(mats))
    return sizes, gens


def _left_mul_ops(sizes, elem):
    """Sparse row form of the left-multiplication operator of an element.

    Returns one list per coordinate; each holds (source_coord, coeff)
    pairs, so products are D sparse dot products regardless of entry size.
    """
    ops = []
    off = 0
    for slot, n in enumerate(sizes):
        gmat = elem[slot]
        for r in range(n):
            grow = gmat[r * n:(r + 1) * n]
            for c in range(n):
                ops.append([(off + i * n + c, grow[i])
                            for i in range(n) if grow[i]])
        off += n * n
    return ops


def _identity_coords(sizes) -> list[int]:
    out = []
    for n in sizes:
        out.extend(ffalg.mat_identity(n))
    return out


def _closure_echelon(shape: AlgebraShape, t) -> _ZEchelon:
    sizes, gens = _validate_z_tuple(shape, t)
    D = shape.rank
    ops = [_left_mul_ops(sizes, g) for g in gens]
    ech = _ZEchelon(D)
    seed = _identity_coords(sizes)
    ech.add(list(seed))
    work = [seed]
    modulus = 0
    if ech.rank == D:
        modulus = ech.index_if_full()
        if modulus == 1:
            return ech
    while work:
        v = work.pop()
        for op in ops:
            w = [_sparse_dot(row, v) for row in op]
            if modulus:
                w = [x % modulus for x in w]
            if ech.add(w):
                if ech.rank == D:
                    modulus = ech.index_if_full()
                    if modulus == 1:
                        return ech
                work.append(w)
    return ech


def _sparse_dot(row, v) -> int:
    acc = 0
    for t, c in row:
        acc += c * v[t]
    return acc


def closure_lattice(shape: AlgebraShape, t) -> Lattice:
    """HNF basis of the Z-span of all monomials in t (including 1)."""
    ech = _closure_echelon(shape, t)
    return Lattice(shape.rank, ech.canonical_basis())


@dataclass(frozen=True)
class ZGenReport:
    generates: bool
    index: int                     # 0 means rank-deficient
    bad_primes: tuple[int, ...]    # primes where generation fails; sorted


def factor_index(index: int) -> tuple[int, ...]:
    """Distinct prime factors of a positive index.

    Trial division up to 10^6, then a primality verdict on the cofactor;
    an unresolved composite cofactor is reported, never guessed.
    """
    if index < 1:
        raise BadParams("index must be positive")
    out = []
    n = index
    d = 2
    while d <= TRIAL_DIVISION_BOUND and d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        if n <= TRIAL_DIVISION_BOUND ** 2:
            # composite cofactors this small would have a factor <= 10^6
            out.append(n)
        elif ffalg.is_prime(n):
            out.append(n)
        else:
            raise FactorizationIncomplete(
                f"cofactor {n} of index {index} is composite but unfactored")
    return tuple(sorted(out))


def generates_Z(shape: AlgebraShape, t) -> ZGenReport:
    """Certify generation over Z: full rank and index 1 in the closure."""
    lat = closure_lattice(shape, t)
    index = lat.index
    if lat.rank < shape.rank:
        return ZGenReport(False, 0, ())
    if index == 1:
        return ZGenReport(True, 1, ())
    return ZGenReport(False, index, factor_index(index))


# ---------------------------------------------------------------------------
# Special tests for 2 x 2 matrices
# ---------------------------------------------------------------------------

def _mat2_mul(A, B):
    return (A[0] * B[0] + A[1] * B[2], A[0] * B[1] + A[1] * B[3],
            A[2] * B[0] + A[3] * B[2], A[2] * B[1] + A[3] * B[3])


def det_commutator_test(A, B) -> bool:
    """True iff det(AB - BA) is a unit of Z, i.e. +1 or -1 (n = 2 only)."""
    if len(A) != 4 or len(B) != 4:
        raise UnsupportedSize("commutator determinant test is for 2x2 matrices")
    AB = _mat2_mul(A, B)
    BA = _mat2_mul(B, A)
    N = tuple(x - y for x, y in zip(AB, BA))
    return N[0] * N[3] - N[1] * N[2] in (1, -1)


def conj_invariant(X, Y) -> tuple[int, int, int, int, int]:
    """(tr X, det X, tr Y, det Y, tr XY) for 2 x 2 integer matrices."""
    if len(X) != 4 or len(Y) != 4:
        raise UnsupportedSize("conjugation invariant is for 2x2 matrices")
    XY = _mat2_mul(X, Y)
    return (X[0] + X[3], X[0] * X[3] - X[1] * X[2],
            Y[0] + Y[3], Y[0] * Y[3] - Y[1] * Y[2],
            XY[0] + XY[3])


# ---------------------------------------------------------------------------
# Module generation of Z^n via Smith normal form
# ---------------------------------------------------------------------------

def smith_invariant_factors(rows) -> tuple[int, ...]:
    """Nonzero invariant factors d_1 | d_2 | ... of an integer matrix."""
    A = [list(map(int, r)) for r in rows]
    if not A:
        return ()
    m, n = len(A), len(A[0])
    for r in A:
        if len(r) != n:
            raise BadParams("rows of unequal length")
    factors = []
    top = 0
    while top < min(m, n):
        # find a nonzero entry in the remaining block
        piv = None
        for i in range(top, m):
            for j in range(top, n):
                if A[i][j]:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        i, j = piv
        A[top], A[i] = A[i], A[top]
        for r in A:
            r[top], r[j] = r[j], r[top]
        while True:
            # clear column top with row operations
            for i in range(top + 1, m):
                a, b = A[top][top], A[i][top]
                if b == 0:
                    continue
                if b % a == 0:
                    q = b // a
                    for t in range(top, n):
                        A[i][t] -= q * A[top][t]
                else:
                    x, y, g = _xgcd(a, b)
                    ag, bg = a // g, b // g
                    for t in range(top, n):
                        at, bt = A[top][t], A[i][t]
                        A[top][t] = x * at + y * bt
                        A[i][t] = -bg * at + ag * bt
            # clear row top with column operations
            dirty = False
            for j in range(top + 1, n):
                a, b = A[top][top], A[top][j]
                if b == 0:
                    continue
                if b % a == 0:
                    q = b // a
                    for r in A:
                        r[j] -= q * r[top]
                else:
                    x, y, g = _xgcd(a, b)
                    ag, bg = a // g, b // g
                    for r in A:
                        rt, rj = r[top], r[j]
                        r[top] = x * rt + y * rj
                        r[j] = -bg * rt + ag * rj
                    dirty = True
            if not dirty and all(A[i][top] == 0 for i in range(top + 1, m)):
                break
        # enforce divisibility: pivot must divide the rest of the block
        piv_val = A[top][top]
        offender = None
        for i in range(top + 1, m):
            for j in range(top + 1, n):
                if A[i][j] % piv_val:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            for t in range(top, n):
                A[top][t] += A[offender][t]
            continue  # redo this pivot
        factors.append(abs(piv_val))
        top += 1
    return tuple(factors)


def generates_Zn_module(vectors) -> bool:
    """True iff the vectors generate Z^n as a module: the Smith normal form
    of the stacked matrix has n invariant factors, all equal to 1.
    """
    vectors = [list(v) for v in vectors]
    if not vectors:
        return False
    n = len(vectors[0])
    fac = smith_invariant_factors(vectors)
    return len(fac) == n and all(d == 1 for d in fac)


# ---------------------------------------------------------------------------
# The {0,1} census and the 16-copy witness
# ---------------------------------------------------------------------------

def _code_to_zmat(n: int, code: int) -> tuple[int, ...]:
    return tuple((code >> i) & 1 for i in range(n * n))


def _entry_key(n: int, a: int, b: int):
    """Row-major {0,1} encoding of an ordered pair, for lexicographic order."""
    return _code_to_zmat(n, a) + _code_to_zmat(n, b)


def m2f2_pair_orbits() -> list[list[tuple[int, int]]]:
    """Orbits of the 96 generating pairs of M_2(F_2) under simultaneous
    conjugation, each orbit sorted by row-major encoding."""
    ctx = ffalg.make_field(2)
    gl = ffalg.gl_elements(ctx, 2)
    pairs = set()
    for a, b in genff.f2_generating_pairs(2):
        pairs.add((a, b))
        pairs.add((b, a))
    orbits = []
    seen = set()
    for pair in sorted(pairs, key=lambda ab: _entry_key(2, *ab)):
        if pair in seen:
            continue
        orbit = set()
        amat = _code_to_zmat(2, pair[0])
        bmat = _code_to_zmat(2, pair[1])
        for g in gl:
            ginv = genff._mat_inv(ctx, 2, g)
            ga = ffalg.mat_mul(ctx, 2, ffalg.mat_mul(ctx, 2, g, amat), ginv)
            gb = ffalg.mat_mul(ctx, 2, ffalg.mat_mul(ctx, 2, g, bmat), ginv)
            orbit.add((genff._f2_encode(ga), genff._f2_encode(gb)))
        seen |= orbit
        orbits.append(sorted(orbit, key=lambda ab: _entry_key(2, *ab)))
    return orbits


def construct_M2Z16():
    """Two explicit generators of M_2(Z)^16.

    Takes the lexicographically smallest representative of each of the 16
    conjugation orbits of generating pairs of M_2(F_2), lifts entrywise to
    {0,1} integer matrices, and assembles them coordinatewise.  The result
    is certified by the Z-closure before returning.
    """
    orbits = m2f2_pair_orbits()
    if len(orbits) != 16:
        raise CertificationFailed(f"expected 16 orbits, found {len(orbits)}")
    reps = sorted((orb[0] for orb in orbits), key=lambda ab: _entry_key(2, *ab))
    x = tuple(_code_to_zmat(2, a) for a, _b in reps)
    y = tuple(_code_to_zmat(2, b) for _a, b in reps)
    shape = shape_over_Z([(2, 16)])
    report = generates_Z(shape, [x, y])
    if not report.generates:
        raise CertificationFailed(
            f"witness failed certification: index {report.index}")
    return x, y


def _census_shard(args) -> tuple[int, int]:
    n, lo, hi = args
    q = 1 << (n * n)
    shape = shape_over_Z([(n, 1)])
    gen = 0
    fail = 0
    for a in range(lo, hi):
        amat = _code_to_zmat(n, a)
        for b in range(a + 1, q):
            if not genff._f2_generates(n, 1, ((a,), (b,))):
                continue
            gen += 2
            rep = generates_Z(shape, [(amat,), (_code_to_zmat(n, b),)])
            if not rep.generates:
                fail += 2
    return gen, fail


def zero_one_census(n: int, threads: int = 1) -> tuple[int, int]:
    """Over all ordered pairs of {0,1} n x n integer matrices: how many
    generate M_n(F_2) after reduction mod 2, and how many of those fail
    to generate M_n(Z).

    Generation depends only on the pair as a set and no single matrix
    generates, so the sweep runs over unordered pairs with weight 2.
    """
    if n not in (2, 3):
        raise UnsupportedSize("census covers n in {2, 3}")
    q = 1 << (n * n)
    if threads <= 1:
        return _census_shard((n, 0, q))
    shard_count = 4 * threads
    bounds = [q * i // shard_count for i in range(shard_count + 1)]
    shards = [(n, lo, hi) for lo, hi in zip(bounds, bounds[1:])]
    from .parutil import map_shards
    parts = map_shards(_census_shard, shards, threads)
    return tuple(sum(col) for col in zip(*parts))
