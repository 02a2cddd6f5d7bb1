"""Grassmann operators, flavor labels, isospin, and triality."""

import numpy as np
import pytest

from spintime import (
    classify_flavor,
    flavor_gammas,
    grassmann_algebra,
    hyperbinary_basis,
    isospin_generators,
    triality_duality,
    triality_form,
    triality_triple,
)
from spintime.errors import ArgumentError, ResourceLimitError
from spintime.grassmann import (
    DOUBLETS,
    GrassmannElement,
    flavor_table_rows,
    isospin_structure_constants,
    triality_pairing,
)


class TestGrassmannAlgebra:
    def test_dimensions(self):
        assert grassmann_algebra(4).dim == 16
        with pytest.raises(ResourceLimitError):
            grassmann_algebra(17)

    def test_squares_vanish(self):
        alg = grassmann_algebra(4)
        for i in range(1, 5):
            assert (alg.e(i) * alg.e(i)).is_zero()

    def test_anticommutativity(self):
        alg = grassmann_algebra(4)
        for a in range(1, 5):
            for b in range(1, 5):
                if a != b:
                    lhs = alg.e(a) * alg.e(b)
                    rhs = alg.e(b) * alg.e(a)
                    assert lhs == rhs * -1

    def test_leading_leibniz_example(self):
        # derivation of e1 e2 with respect to e1 gives e2
        alg = grassmann_algebra(4)
        v = alg.element_vector(alg.e(1) * alg.e(2))
        out = alg.delta(1) @ v
        assert np.array_equal(out, alg.element_vector(alg.e(2)))

    def test_car_exhaustive(self):
        alg = grassmann_algebra(4)
        eye = np.eye(alg.dim)
        for a in range(1, 5):
            for b in range(1, 5):
                mu_a, mu_b = alg.mu(a).toarray(), alg.mu(b).toarray()
                d_a, d_b = alg.delta(a).toarray(), alg.delta(b).toarray()
                assert np.array_equal(mu_a @ d_b + d_b @ mu_a, (a == b) * eye)
                assert np.array_equal(mu_a @ mu_b + mu_b @ mu_a, 0 * eye)
                assert np.array_equal(d_a @ d_b + d_b @ d_a, 0 * eye)


class TestFlavorGammas:
    def test_neutral_clifford_combinations(self):
        alg = grassmann_algebra(4)
        gammas = flavor_gammas(alg)
        eye = np.eye(16)
        for a in range(4):
            plus = (gammas[a] + gammas[4 + a]).toarray()
            minus = (gammas[a] - gammas[4 + a]).toarray()
            assert np.array_equal(plus @ plus, eye)
            assert np.array_equal(minus @ minus, -eye)

    def test_all_anticommutators_scalar(self):
        gammas = [g.toarray() for g in flavor_gammas()]
        eye = np.eye(16)
        for a in range(8):
            for b in range(8):
                anti = gammas[a] @ gammas[b] + gammas[b] @ gammas[a]
                scale = anti[0, 0]
                assert np.array_equal(anti, scale * eye)

    def test_gamma1_on_unit(self):
        alg = grassmann_algebra(4)
        unit = alg.element_vector(alg.unit())
        out = flavor_gammas(alg)[0] @ unit
        assert np.array_equal(out, alg.element_vector(alg.e(1)))


class TestHyperbinary:
    def test_anchor_serials(self):
        labels = {label.serial: label for label, _ in hyperbinary_basis()}
        assert labels[1].isospin_slot == "U"
        assert labels[2].isospin_slot == "D"
        assert labels[4].color == "R"
        assert labels[8].color == "G"
        assert labels[12].color == "B"

    def test_tier_sizes(self):
        tiers = [classify_flavor(s).tier for s in range(16)]
        assert [tiers.count(t) for t in range(4)] == [1, 1, 2, 12]

    def test_serial_0_lepton(self):
        label = classify_flavor(0)
        assert label.tier == 0
        assert label.kind == "lepton"
        assert label.color is None

    def test_quark_is_lepton_and_color(self):
        quarks = [classify_flavor(s) for s in range(4, 16)]
        assert len(quarks) == 12
        assert all(q.kind == "quark" for q in quarks)
        assert all(q.color in ("R", "G", "B") for q in quarks)
        by_color = {c: sum(1 for q in quarks if q.color == c) for c in "RGB"}
        assert by_color == {"R": 4, "G": 4, "B": 4}

    def test_serial_12_blue(self):
        label = classify_flavor(12)
        assert label.kind == "quark"
        assert label.color == "B"

    def test_out_of_range(self):
        with pytest.raises(ArgumentError):
            classify_flavor(16)

    def test_table_schema(self):
        rows = flavor_table_rows()
        assert len(rows) == 16
        assert set(rows[0]) == {"serial", "symbol", "tier", "kind", "color",
                                "isospin_slot"}
        assert rows[5]["symbol"] == "0101"


class TestIsospin:
    def test_closure_constants(self):
        gens = isospin_generators()
        c = isospin_structure_constants(gens)
        # epsilon support with magnitude 2; the split real form flips one sign
        assert c[0, 1, 2] == pytest.approx(2.0)
        assert c[1, 2, 0] == pytest.approx(2.0)
        assert c[2, 0, 1] == pytest.approx(-2.0)
        for a in range(3):
            for b in range(3):
                for k in range(3):
                    if len({a, b, k}) < 3:
                        assert abs(c[a, b, k]) < 1e-12

    def test_antisymmetric_component_is_antisymmetric(self):
        gens = isospin_generators()
        i2 = gens[1].toarray()
        assert np.array_equal(i2, -i2.T)

    def test_commutes_with_spacetime_sector(self):
        alg = grassmann_algebra(8)
        gens = isospin_generators(alg)
        for a in range(1, 5):
            for op in (alg.mu(a), alg.delta(a)):
                for gen in gens:
                    comm = gen @ op - op @ gen
                    assert comm.nnz == 0 or np.max(np.abs(comm.toarray())) == 0

    def test_doublet_action_i3(self):
        # I_3 acts diagonally on the doublet generators with +-1
        alg = grassmann_algebra(8)
        i3 = isospin_generators(alg)[2]
        d1, d2 = DOUBLETS[0]
        v1 = alg.element_vector(alg.e(d1))
        v2 = alg.element_vector(alg.e(d2))
        assert np.array_equal(i3 @ v1, v1)
        assert np.array_equal(i3 @ v2, -v2)

    def test_bad_doublets(self):
        alg = grassmann_algebra(4)
        with pytest.raises(ArgumentError):
            isospin_generators(alg)


@pytest.fixture(scope="module")
def triple():
    return triality_triple()


class TestTriality:
    def test_half_spinor_dims(self, triple):
        assert triple.basis_plus.shape == (16, 8)
        assert triple.basis_minus.shape == (16, 8)

    def test_intertwiner_transpose_pattern(self, triple):
        a_mat = triple.intertwiner
        a_inv = np.linalg.inv(a_mat)
        for i, g in enumerate(triple.gammas):
            assert np.allclose(a_mat @ g @ a_inv, g.T, atol=1e-9)

    def test_intertwiner_matches_nullspace_solver(self, triple):
        # oracle: solve the intertwining equations A g = g^T A numerically
        rows = []
        for g in triple.gammas:
            gf = g.astype(float)
            rows.append(np.kron(np.eye(16), gf.T) - np.kron(gf.T, np.eye(16)))
        system = np.vstack(rows)
        _, s, vh = np.linalg.svd(system)
        null = vh[np.abs(np.concatenate([s, np.zeros(vh.shape[0] - len(s))])) < 1e-9]
        assert null.shape[0] >= 1
        # the constructed intertwiner lies in the solution space
        vec = triple.intertwiner.reshape(-1)
        proj = null.T @ (null @ vec)
        assert np.allclose(proj, vec, atol=1e-9)

    def test_zero_slot_gives_zero(self, triple):
        rng = np.random.default_rng(2)
        psi_p, psi_m = rng.standard_normal((2, 8))
        assert triality_form(triple, np.zeros(8), psi_p, psi_m) == 0.0

    def test_multilinearity(self, triple):
        rng = np.random.default_rng(3)
        v, w, psi_p, psi_m = rng.standard_normal((4, 8))
        a, b = 1.7, -0.3
        lhs = triality_form(triple, a * v + b * w, psi_p, psi_m)
        rhs = a * triality_form(triple, v, psi_p, psi_m) + b * triality_form(
            triple, w, psi_p, psi_m
        )
        assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-9)

    def test_generic_rank_8_all_slots(self, triple):
        rng = np.random.default_rng(4)
        for fixed in ("vector", "plus", "minus"):
            for _ in range(25):
                vec = rng.standard_normal(8)
                if fixed == "vector":
                    while abs(triple.quadratic_form(vec)) < 0.1:
                        vec = rng.standard_normal(8)
                assert triality_duality(triple, fixed, vec).rank == 8

    def test_hundred_seeded_vectors(self, triple):
        rng = np.random.default_rng(123)
        count = 0
        while count < 100:
            v = rng.standard_normal(8)
            if abs(triple.quadratic_form(v)) < 0.1:
                continue
            assert triality_duality(triple, "vector", v, tol=1e-9).full
            count += 1

    def test_isotropic_vector_rank_drop(self, triple):
        v = np.zeros(8)
        v[0] = 1.0
        neg = next(i for i in range(8) if triple.raised[i] == -1)
        v[neg] = 1.0
        assert triple.quadratic_form(v) == 0.0
        report = triality_duality(triple, "vector", v)
        assert report.rank < 8

    def test_scaling_linearity(self, triple):
        rng = np.random.default_rng(5)
        v = rng.standard_normal(8)
        m1 = triality_pairing(triple, "vector", v)
        m2 = triality_pairing(triple, "vector", 2.5 * v)
        assert np.allclose(m2, 2.5 * m1, atol=1e-9)

    def test_zero_vector_rejected(self, triple):
        with pytest.raises(ArgumentError):
            triality_duality(triple, "vector", np.zeros(8))

    def test_bad_slot_name(self, triple):
        with pytest.raises(ArgumentError):
            triality_pairing(triple, "middle", np.ones(8))


class TestGrassmannElement:
    def test_vector_round_trip(self):
        alg = grassmann_algebra(4)
        x = alg.e(1) * alg.e(3) + alg.unit() * 2
        v = alg.element_vector(x)
        assert alg.vector_element(v) == x

    def test_mu_matches_element_product(self):
        alg = grassmann_algebra(4)
        for a in range(1, 5):
            for mask in range(16):
                x = GrassmannElement(4, {mask: 1})
                via_ops = alg.mu(a) @ alg.element_vector(x)
                via_mul = alg.element_vector(alg.e(a) * x)
                assert np.array_equal(via_ops, via_mul)
