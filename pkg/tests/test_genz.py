import random

import pytest

from algen import ffalg, genff, genz
from algen.errors import BadParams, FactorizationIncomplete, UnsupportedSize
from algen.genff import f2_generating_pairs, shape_over_Z, shape_over_field
from algen.genz import (
    closure_lattice,
    conj_invariant,
    construct_M2Z16,
    det_commutator_test,
    factor_index,
    generates_Z,
    generates_Zn_module,
    hnf,
    m2f2_pair_orbits,
    smith_invariant_factors,
    zero_one_census,
)

E12 = (0, 1, 0, 0)
E21 = (0, 0, 1, 0)
SHAPE2 = shape_over_Z([(2, 1)])
SHAPE3 = shape_over_Z([(3, 1)])

REMARK_A = (0, 0, 0, 0, 0, 0, 0, 1, 1)
REMARK_B = (0, 0, 1, 1, 0, 1, 0, 0, 1)


# ---------------------------------------------------------------------------
# HNF
# ---------------------------------------------------------------------------

def test_hnf_examples():
    assert hnf([(1, 0), (0, 1)]).basis == ((1, 0), (0, 1))
    lat = hnf([(2, 0), (0, 2)])
    assert lat.pivots() == (2, 2) and lat.index == 4
    assert hnf([(2, 1), (0, 1)]).basis == ((2, 0), (0, 1))


def test_hnf_idempotent_and_membership():
    rng = random.Random(17)
    for _ in range(150):
        D = rng.randrange(1, 5)
        rows = [[rng.randrange(-9, 10) for _ in range(D)]
                for _ in range(rng.randrange(1, 6))]
        lat = hnf(rows)
        if lat.basis:
            assert hnf(lat.basis).basis == lat.basis
        # every input row lies in the lattice
        ech = genz._ZEchelon(D)
        for b in lat.basis:
            ech.add(list(b))
        for r in rows:
            assert ech.contains(r)
        # and every basis row is a Z-combination of the inputs
        ech2 = genz._ZEchelon(D)
        for r in rows:
            ech2.add(list(r))
        for b in lat.basis:
            assert ech2.contains(list(b))


def test_hnf_reduced_above_pivots():
    rng = random.Random(23)
    for _ in range(100):
        rows = [[rng.randrange(-20, 21) for _ in range(4)] for _ in range(5)]
        lat = hnf(rows)
        cols = []
        for row in lat.basis:
            piv_col = next(i for i, v in enumerate(row) if v)
            piv = row[piv_col]
            assert piv > 0
            for above in range(len(cols)):
                assert 0 <= lat.basis[above][piv_col] < piv
            cols.append(piv_col)
        assert cols == sorted(cols)


# ---------------------------------------------------------------------------
# Closure and certification
# ---------------------------------------------------------------------------

def test_closure_examples():
    lat = closure_lattice(SHAPE2, [(E12,), (E21,)])
    assert lat.index == 1
    lat = closure_lattice(SHAPE2, [((0, 2, 0, 0),), (E21,)])
    assert lat.index == 4
    assert lat.basis == ((1, 0, 0, 1), (0, 2, 0, 0), (0, 0, 1, 0), (0, 0, 0, 2))
    lat = closure_lattice(shape_over_Z([(1, 1)]), [])
    assert lat.basis == ((1,),) and lat.index == 1


def test_closure_across_blocks():
    # Z x M_2(Z): factors of different size separate by the remainder trick
    shape = shape_over_Z([(1, 1), (2, 1)])
    x = ((1,), E12)
    y = ((0,), E21)
    assert generates_Z(shape, [x, y]).generates
    # projection to the M_2 factor fails to generate: no luck
    assert not generates_Z(shape, [x, ((1,), (0, 0, 0, 0))]).generates


def test_hnf_empty_rows():
    lat = hnf([], D=3)
    assert lat.rank == 0 and lat.index == 0


def _naive_closure(shape, t):
    """Fixed-point oracle: union with all generator products, re-HNF,
    repeat until the canonical basis stabilizes.  No worklist, no modular
    reduction; used to cross-check the production closure."""
    sizes = shape.slot_sizes()
    D = shape.rank

    def coords(elem):
        out = []
        for m in elem:
            out.extend(m)
        return list(out)

    def decode(vec):
        mats, i = [], 0
        for n in sizes:
            mats.append(tuple(vec[i:i + n * n]))
            i += n * n
        return mats

    def mul(a, b):
        out = []
        for n, A, B in zip(sizes, a, b):
            out.append(tuple(sum(A[r * n + t] * B[t * n + c] for t in range(n))
                             for r in range(n) for c in range(n)))
        return out

    ident = [tuple(1 if i == j else 0 for i in range(n) for j in range(n))
             for n in sizes]
    basis = [coords(ident)]
    while True:
        rows = [list(b) for b in basis]
        for g in t:
            for b in basis:
                rows.append(coords(mul(list(g), decode(b))))
        new = [list(r) for r in hnf(rows, D=D).basis]
        if new == [list(r) for r in hnf(basis, D=D).basis]:
            return hnf(rows, D=D)
        basis = new


def test_closure_against_fixed_point_oracle():
    rng = random.Random(777)
    for _ in range(120):
        blocks = rng.choice([[(2, 1)], [(3, 1)], [(1, 1), (2, 1)], [(2, 2)]])
        shape = shape_over_Z(blocks)
        sizes = shape.slot_sizes()
        t = [tuple(tuple(rng.randrange(-3, 4) for _ in range(n * n))
                   for n in sizes)
             for _ in range(rng.randrange(1, 4))]
        assert closure_lattice(shape, t).basis == _naive_closure(shape, t).basis


def test_generates_Z_examples():
    assert generates_Z(SHAPE2, [(E12,), (E21,)]) == genz.ZGenReport(True, 1, ())
    rep = generates_Z(SHAPE3, [(REMARK_A,), (REMARK_B,)])
    assert rep == genz.ZGenReport(False, 9, (3,))
    rep = generates_Z(SHAPE2, [((2, 0, 0, 2),)])
    assert not rep.generates and rep.index == 0 and rep.bad_primes == ()


def test_bad_primes_soundness():
    # mod p generation must fail exactly at the bad primes (p <= 50 checked)
    cases = [
        ([(REMARK_A,), (REMARK_B,)], SHAPE3, 3),
        ([((0, 2, 0, 0),), (E21,)], SHAPE2, 2),
        ([((0, 3, 0, 0),), ((0, 0, 5, 0),)], SHAPE2, None),
    ]
    for t, shape, _ in cases:
        rep = generates_Z(shape, t)
        n = shape.blocks[0][0]
        for p in [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]:
            fshape = shape_over_field(ffalg.make_field(p), [(n, 1, 1)])
            reduced = [tuple(tuple(v % p for v in mat) for mat in elem)
                       for elem in t]
            ok = genff.generates(fshape, reduced)
            if rep.index == 0:
                continue
            assert ok == (p not in rep.bad_primes), (t, p)


def test_generates_Z_implies_mod_p():
    rng = random.Random(2)
    sample = rng.sample(f2_generating_pairs(3), 40)
    primes = [2, 3, 5, 7, 11]
    fshapes = {p: shape_over_field(ffalg.make_field(p), [(3, 1, 1)]) for p in primes}
    for a, b in sample:
        amat = genz._code_to_zmat(3, a)
        bmat = genz._code_to_zmat(3, b)
        rep = generates_Z(SHAPE3, [(amat,), (bmat,)])
        if rep.generates:
            for p in primes:
                assert genff.generates(fshapes[p], [(amat,), (bmat,)])


def test_det_commutator_examples():
    assert det_commutator_test(E12, E21)
    assert not det_commutator_test((1, 0, 0, 1), (2, 0, 0, 2))
    assert not det_commutator_test((1, 0, 0, 0), E12)
    with pytest.raises(UnsupportedSize):
        det_commutator_test((1,) * 9, (0,) * 9)


def test_det_commutator_equals_closure_seeded():
    rng = random.Random(20260808)
    for _ in range(10_000):
        A = tuple(rng.randrange(-5, 6) for _ in range(4))
        B = tuple(rng.randrange(-5, 6) for _ in range(4))
        assert det_commutator_test(A, B) == generates_Z(SHAPE2, [(A,), (B,)]).generates


def test_conj_invariant():
    assert conj_invariant(E12, E21) == (0, 0, 0, 0, 1)
    I2 = (1, 0, 0, 1)
    assert conj_invariant(I2, I2) == (2, 1, 2, 1, 2)
    assert conj_invariant((0, 1, 1, 1), (1, 1, 1, 0)) == (1, -1, 1, -1, 2)


def test_modp_conjugacy_classification():
    """Among {0,1} pairs generating M_2(Z): equal conjugation invariants
    iff conjugate modulo every odd prime p <= 13.

    Conjugacy mod p is an equivalence relation, so the forward direction
    is verified along a chain through each invariant class.  For the
    converse, invariant components all lie in ranges narrower than 13,
    so distinct invariants stay distinct mod 13 and the pairs cannot be
    conjugate there (conjugation invariance of the 5-tuple is verified
    separately below); explicit sweeps spot-check that conclusion.
    """
    pairs = []
    for a, b in f2_generating_pairs(2):
        pairs.append((a, b))
        pairs.append((b, a))
    mats = {c: genz._code_to_zmat(2, c) for c in range(16)}
    classes: dict[tuple, list] = {}
    for a, b in pairs:
        classes.setdefault(conj_invariant(mats[a], mats[b]), []).append((a, b))
    primes = [3, 5, 7, 11, 13]
    ctxs = {p: ffalg.make_field(p) for p in primes}

    def conjugate_mod(p, P1, P2):
        t1 = tuple(tuple(v % p for v in mats[c]) for c in P1)
        t2 = tuple(tuple(v % p for v in mats[c]) for c in P2)
        return ffalg.are_conjugate_tuples(ctxs[p], t1, t2, cap=30_000)

    for members in classes.values():
        for P1, P2 in zip(members, members[1:]):
            for p in primes:
                assert conjugate_mod(p, P1, P2), (P1, P2, p)

    invs = sorted(classes)
    for i, v1 in enumerate(invs):
        for v2 in invs[i + 1:]:
            assert any((x - y) % 13 for x, y in zip(v1, v2))
    rng = random.Random(6)
    reps = [members[0] for members in classes.values()]
    for _ in range(8):
        P1, P2 = rng.sample(reps, 2)
        assert not conjugate_mod(13, P1, P2)
        assert not conjugate_mod(3, P1, P2) or not conjugate_mod(5, P1, P2) \
            or not conjugate_mod(13, P1, P2)


def test_conj_invariant_is_conjugation_invariant_mod_p():
    # soundness of the shortcut used above
    rng = random.Random(5)
    for p in (3, 13):
        ctx = ffalg.make_field(p)
        gl = ffalg.gl_elements(ctx, 2, cap=30_000)
        for _ in range(20):
            X = tuple(rng.randrange(p) for _ in range(4))
            Y = tuple(rng.randrange(p) for _ in range(4))
            g = gl[rng.randrange(len(gl))]
            ginv = genff._mat_inv(ctx, 2, g)
            Xc = ffalg.mat_mul(ctx, 2, ffalg.mat_mul(ctx, 2, g, X), ginv)
            Yc = ffalg.mat_mul(ctx, 2, ffalg.mat_mul(ctx, 2, g, Y), ginv)
            a = tuple(v % p for v in conj_invariant(X, Y))
            b = tuple(v % p for v in conj_invariant(Xc, Yc))
            assert a == b


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

def test_snf_examples():
    assert smith_invariant_factors([[2, 0], [0, 4]]) == (2, 4)
    assert smith_invariant_factors([[2, 0], [0, 3]]) == (1, 6)
    assert smith_invariant_factors([[0, 0], [0, 0]]) == ()


def test_generates_Zn_module():
    assert generates_Zn_module([(1, 0), (0, 1)])
    assert not generates_Zn_module([(2,)])
    assert generates_Zn_module([(1, 0), (1, 2), (0, 3)])
    assert not generates_Zn_module([])


def test_snf_hnf_agreement_seeded():
    rng = random.Random(31)
    for _ in range(400):
        n = rng.randrange(1, 5)
        rows = [[rng.randrange(-4, 5) for _ in range(n)]
                for _ in range(rng.randrange(1, n + 3))]
        lat = hnf(rows)
        assert generates_Zn_module(rows) == (lat.rank == n and lat.index == 1)


# ---------------------------------------------------------------------------
# Index factorization
# ---------------------------------------------------------------------------

def test_factor_index():
    assert factor_index(1) == ()
    assert factor_index(9) == (3,)
    assert factor_index(288) == (2, 3)
    assert factor_index(2 ** 61 - 1) == (2 ** 61 - 1,)  # Mersenne prime cofactor
    with pytest.raises(BadParams):
        factor_index(0)
    # composite cofactor with no factor below 10^6: two 10-digit primes
    with pytest.raises(FactorizationIncomplete):
        factor_index(1000003**2 * 1000033)
    # (1000003 is above the trial bound, so the cofactor is composite)


# ---------------------------------------------------------------------------
# The witness and the census
# ---------------------------------------------------------------------------

def test_pair_orbits():
    orbits = m2f2_pair_orbits()
    assert len(orbits) == 16
    assert sum(len(o) for o in orbits) == 96
    assert all(len(o) == 6 for o in orbits)  # free action of PGL_2(F_2)


def test_construct_m2z16():
    x, y = construct_M2Z16()
    assert len(x) == len(y) == 16
    shape = shape_over_Z([(2, 16)])
    rep = generates_Z(shape, [x, y])
    assert rep.generates and rep.index == 1
    # every coordinate pair consists of {0,1} matrices
    for mats in (x, y):
        for mat in mats:
            assert set(mat) <= {0, 1}


def test_census_n2():
    assert zero_one_census(2) == (96, 0)


def test_census_n2_ordered_exhaustive_oracle():
    # independent of the unordered-sweep optimization: all 256 ordered pairs
    shape = SHAPE2
    fshape = shape_over_field(ffalg.make_field(2), [(2, 1, 1)])
    gen = fail = 0
    for a in range(16):
        for b in range(16):
            amat = genz._code_to_zmat(2, a)
            bmat = genz._code_to_zmat(2, b)
            if genff.generates(fshape, [(amat,), (bmat,)]):
                gen += 1
                if not generates_Z(shape, [(amat,), (bmat,)]).generates:
                    fail += 1
    assert (gen, fail) == zero_one_census(2) == (96, 0)


def test_census_threads_deterministic():
    assert zero_one_census(2, threads=3) == zero_one_census(2)
    with pytest.raises(UnsupportedSize):
        zero_one_census(4)
