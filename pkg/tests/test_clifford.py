"""Blade arithmetic, matrix representations, and the rank ladder."""

from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as hst

from spintime import (
    Blade,
    FRAME33,
    Signature,
    blade_product,
    grade_project,
    make_algebra,
    matrix_rep,
    rank_dimensions,
)
from spintime.clifford import CliffordElement, indices_of
from spintime.errors import (
    ArgumentError,
    ResourceLimitError,
    UnsupportedSignatureError,
)


# ---------------------------------------------------------------------------
# independent sign oracle: explicit bubble-sort transposition count
# ---------------------------------------------------------------------------

def product_oracle(idx_a, idx_b, diag):
    """Multiply basis monomials by explicitly sorting the concatenation."""
    seq = list(idx_a) + list(idx_b)
    sign = 1
    changed = True
    while changed:
        changed = False
        for i in range(len(seq) - 1):
            if seq[i] > seq[i + 1]:
                seq[i], seq[i + 1] = seq[i + 1], seq[i]
                sign = -sign
                changed = True
    out = []
    i = 0
    while i < len(seq):
        if i + 1 < len(seq) and seq[i] == seq[i + 1]:
            sign *= diag[seq[i] - 1]
            i += 2
        else:
            out.append(seq[i])
            i += 1
    return tuple(out), sign


def subsets(n):
    for mask in range(1 << n):
        yield tuple(indices_of(mask))


class TestBladeProduct:
    def test_paper_frame_squares(self):
        alg = make_algebra(FRAME33)
        for i in (1, 2, 3):
            assert alg.gamma(i) * alg.gamma(i) == alg.unit
        for i in (4, 5, 6):
            assert alg.gamma(i) * alg.gamma(i) == -1 * alg.unit

    def test_e12_times_e2(self):
        alg = make_algebra(FRAME33)
        assert (alg.gamma(1) * alg.gamma(2)) * alg.gamma(2) == alg.gamma(1)

    def test_sign_oracle_exhaustive_4(self):
        sig = Signature(2, 2)
        for a in subsets(4):
            for b in subsets(4):
                want_idx, want_sign = product_oracle(a, b, sig.diag)
                got = blade_product(Blade(sum(1 << (i - 1) for i in a)),
                                    Blade(sum(1 << (i - 1) for i in b)), sig)
                assert got.indices() == want_idx
                assert got.sign == want_sign

    def test_associativity_exhaustive_small(self):
        # exhaustive over all blade triples for up to 4 generators
        for sig in (Signature(2, 2), Signature(3, 1), Signature(2, 0)):
            alg = make_algebra(sig)
            blades = [CliffordElement(alg, {m: Fraction(1)}) for m in range(alg.dim)]
            for x, y, z in product(blades, repeat=3):
                assert (x * y) * z == x * (y * z)

    @settings(max_examples=300, deadline=None)
    @given(
        a=hst.integers(min_value=0, max_value=255),
        b=hst.integers(min_value=0, max_value=255),
        c=hst.integers(min_value=0, max_value=255),
    )
    def test_associativity_random_8gen(self, a, b, c):
        alg = make_algebra(Signature(4, 4))
        x = CliffordElement(alg, {a: Fraction(1)})
        y = CliffordElement(alg, {b: Fraction(1)})
        z = CliffordElement(alg, {c: Fraction(1)})
        assert (x * y) * z == x * (y * z)

    def test_associativity_exhaustive_6gen_blade_level(self):
        # all 64^3 blade triples in the default frame, sign arithmetic only
        from spintime.clifford import mul_masks
        diag = FRAME33.diag
        for a in range(64):
            for b in range(64):
                ab_mask, ab_scale = mul_masks(a, b, diag)
                for c in range(64):
                    m1, s1 = mul_masks(ab_mask, c, diag)
                    bc_mask, bc_scale = mul_masks(b, c, diag)
                    m2, s2 = mul_masks(a, bc_mask, diag)
                    assert m1 == m2
                    assert ab_scale * s1 == bc_scale * s2

    def test_associativity_randomized_8gen_bulk(self):
        # 10^4 randomized triples at 8 generators, blade level
        from spintime.clifford import mul_masks
        diag = Signature(4, 4).diag
        rng = np.random.default_rng(17)
        for _ in range(10_000):
            a, b, c = (int(v) for v in rng.integers(0, 256, size=3))
            ab_mask, ab_scale = mul_masks(a, b, diag)
            m1, s1 = mul_masks(ab_mask, c, diag)
            bc_mask, bc_scale = mul_masks(b, c, diag)
            m2, s2 = mul_masks(a, bc_mask, diag)
            assert (m1, ab_scale * s1) == (m2, bc_scale * s2)

    def test_index_out_of_range(self):
        alg = make_algebra(FRAME33)
        with pytest.raises(ArgumentError):
            alg.gamma(7)
        with pytest.raises(ArgumentError):
            blade_product(Blade(1 << 6), Blade(1), FRAME33)

    def test_anticommutator_blades_match_metric(self):
        alg = make_algebra(FRAME33)
        for a in range(1, 7):
            for b in range(1, 7):
                anti = alg.gamma(a).anticommutator(alg.gamma(b))
                expected = alg.coerce(2 * FRAME33.g(a)) if a == b else alg.zero()
                assert anti == expected


class TestAlgebraHandles:
    def test_dimensions(self):
        assert make_algebra(FRAME33).dim == 64
        assert make_algebra(Signature(0, 0)).dim == 1
        assert make_algebra(Signature(4, 4)).dim == 256

    def test_generator_cap(self):
        with pytest.raises(ResourceLimitError):
            make_algebra(Signature(9, 8))

    def test_element_arithmetic(self):
        alg = make_algebra(FRAME33)
        x = alg.gamma(1) + 2 * alg.gamma(2) * alg.gamma(3)
        y = x - alg.gamma(1)
        assert y == 2 * alg.gamma(2) * alg.gamma(3)
        assert (x * 0).is_zero()


class TestGradeProjection:
    def test_examples(self):
        alg = make_algebra(FRAME33)
        x = alg.unit + alg.gamma(1) * alg.gamma(2)
        assert grade_project(x, 2) == alg.gamma(1) * alg.gamma(2)
        assert grade_project(alg.gamma(1), 0).is_zero()

    def test_partition_identity(self):
        alg = make_algebra(FRAME33)
        rng = np.random.default_rng(3)
        for _ in range(20):
            x = alg.random_element(rng)
            total = alg.zero()
            for k in range(7):
                total = total + grade_project(x, k)
            assert total == x

    def test_projections_idempotent_and_disjoint(self):
        alg = make_algebra(FRAME33)
        rng = np.random.default_rng(4)
        x = alg.random_element(rng)
        for k in range(7):
            pk = grade_project(x, k)
            assert grade_project(pk, k) == pk
            for j in range(7):
                if j != k:
                    assert grade_project(pk, j).is_zero()

    def test_grade_out_of_range(self):
        alg = make_algebra(FRAME33)
        with pytest.raises(ArgumentError):
            grade_project(alg.unit, 7)


class TestMatrixRep:
    def test_cliff_1_1_brute_force_search(self):
        # oracle: search all 2x2 integer matrices with entries in {-1,0,1}
        # for pairs satisfying the anticommutator identity
        candidates = []
        entries = [-1, 0, 1]
        mats = [
            np.array([[a, b], [c, d]])
            for a in entries for b in entries for c in entries for d in entries
        ]
        eye = np.eye(2, dtype=int)
        plus = [m for m in mats if np.array_equal(m @ m, eye)]
        minus = [m for m in mats if np.array_equal(m @ m, -eye)]
        for p in plus:
            for q in minus:
                if np.array_equal(p @ q, -q @ p):
                    candidates.append((p, q))
        assert candidates, "oracle found no 2x2 solution"
        rep = matrix_rep(Signature(1, 1))
        assert rep.dim == 2
        assert rep.anticommutator_defect() == 0

    def test_cliff_3_3(self, rep33):
        assert rep33.dim == 8
        assert rep33.anticommutator_defect() == 0
        for g in rep33.gammas:
            assert g.dtype == np.int64

    def test_cliff_0_0(self):
        rep = matrix_rep(Signature(0, 0))
        assert rep.dim == 1
        assert rep.gammas == ()

    def test_cliff_4_4(self):
        rep = matrix_rep(Signature(4, 4))
        assert rep.dim == 16
        assert rep.anticommutator_defect() == 0

    def test_p_equals_q_plus_2(self):
        for sig in (Signature(2, 0), Signature(3, 1), Signature(4, 2)):
            rep = matrix_rep(sig)
            assert rep.dim == 2 ** (sig.n // 2)
            assert rep.anticommutator_defect() == 0

    def test_unsupported(self):
        with pytest.raises(UnsupportedSignatureError):
            matrix_rep(Signature(3, 0))  # odd
        with pytest.raises(UnsupportedSignatureError):
            matrix_rep(Signature(0, 2))  # quaternionic family
        with pytest.raises(UnsupportedSignatureError):
            matrix_rep(Signature(5, 5))  # oversized

    def test_custom_diag_order(self):
        sig = Signature(3, 3, (1, -1, 1, -1, 1, -1))
        rep = matrix_rep(sig)
        assert rep.anticommutator_defect() == 0
        for i in range(1, 7):
            g = rep.gamma(i)
            assert np.array_equal(g @ g, sig.g(i) * np.eye(8, dtype=np.int64))

    def test_element_matrix_is_algebra_morphism(self, rep33):
        alg = make_algebra(FRAME33)
        rng = np.random.default_rng(5)
        for _ in range(10):
            x = alg.random_element(rng)
            y = alg.random_element(rng)
            lhs = rep33.element_matrix(x * y)
            rhs = rep33.element_matrix(x) @ rep33.element_matrix(y)
            assert np.allclose(lhs, rhs, atol=0.0)


class TestRankDimensions:
    def test_table(self):
        dims = [rank_dimensions(r).dim for r in range(5)]
        deltas = [rank_dimensions(r).delta for r in range(5)]
        assert dims == [1, 2, 4, 16, 65536]
        assert deltas == [1, 1, 2, 12, 65520]

    def test_symbolic_tail(self):
        r5 = rank_dimensions(5)
        assert r5.dim == "2^65536"
        assert r5.delta == "2^65536 - 65536"
        assert rank_dimensions(6).dim == "2^2^65536"

    def test_recursion_exact(self):
        for r in range(1, 5):
            assert rank_dimensions(r).dim == 2 ** rank_dimensions(r - 1).dim

    def test_negative_rank(self):
        with pytest.raises(ArgumentError):
            rank_dimensions(-1)


class TestSignature:
    def test_validation(self):
        with pytest.raises(ArgumentError):
            Signature(1, 1, (1, 1))
        with pytest.raises(ArgumentError):
            Signature(1, 1, (1, 0))
        with pytest.raises(ArgumentError):
            Signature(2, 1, (1, -1))
