import math

import numpy as np
import pytest

from qopposition.linalg import DimensionMismatch, gram_schmidt
from qopposition.quantum import (And, Literal, Observable, Or, OrthoFamily,
                                 QuantumError, State, born, collapse,
                                 family_from_observable, minimal_attribution,
                                 paraconsistent_attribution, superpose, truth)

from helpers import apply_unitary_subspace, haar_unitary, random_state

R2 = 1.0 / math.sqrt(2.0)
UP_X = State([R2, R2])
DOWN_X = State([R2, -R2])
UP_Z = State([1, 0])


def x_family():
    return OrthoFamily(2, [("up_x", gram_schmidt([[R2, R2]])),
                           ("down_x", gram_schmidt([[R2, -R2]]))])


def lit(fam, member, asserted=True):
    return Literal(fam.subspace(member), asserted, fam, member, member)


class TestState:
    def test_unit_required(self):
        with pytest.raises(QuantumError):
            State([1, 1])

    def test_normalized_constructor(self):
        assert np.allclose(State.normalized([3, 0]).vector, [1, 0])


class TestSuperpose:
    def test_basis_conversion_back_to_up_z(self):
        # (up_x + down_x)/sqrt2 = up_z
        got = superpose([R2, R2], [UP_X, DOWN_X])
        assert np.allclose(got.vector, [1, 0])

    def test_destructive_cancellation(self):
        with pytest.raises(QuantumError):
            superpose([1, -1], [UP_X, UP_X])

    def test_skewed_weights(self):
        psi = superpose([2 / math.sqrt(7), math.sqrt(3 / 7)], [UP_X, DOWN_X])
        fam = x_family()
        assert abs(born(psi, fam.subspace("up_x")) - 4 / 7) < 1e-12
        assert abs(born(psi, fam.subspace("down_x")) - 3 / 7) < 1e-12

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            superpose([1, 1], [UP_Z, State([1, 0, 0])])


class TestBorn:
    def test_eigenstate_gives_one(self):
        fam = x_family()
        assert born(UP_X, fam.subspace("up_x")) == pytest.approx(1.0, abs=1e-12)

    def test_up_z_against_x_line(self):
        # |<up_x|up_z>|^2 = 1/2 by hand
        assert born(UP_Z, x_family().subspace("up_x")) == pytest.approx(0.5, abs=1e-12)

    def test_complement_sums_to_one(self):
        rng = np.random.default_rng(41)
        fam = x_family()
        for _ in range(200):
            psi = random_state(2, rng)
            s = fam.subspace("up_x")
            assert abs(born(psi, s) + born(psi, s.orthocomplement()) - 1) < 1e-9

    def test_family_normalization_1000_states(self):
        rng = np.random.default_rng(43)
        fam = x_family()
        for _ in range(1000):
            psi = random_state(2, rng)
            total = sum(born(psi, sub) for _, sub in fam.members)
            assert abs(total - 1.0) < 1e-7


class TestTruth:
    def test_eigenstate_literal(self):
        fam = x_family()
        assert truth(lit(fam, "up_x"), UP_X)

    def test_superposed_state_satisfies_negation(self):
        # a state neither up nor down in x satisfies both negations
        fam = x_family()
        psi = superpose([R2, R2], [UP_X, DOWN_X])
        assert truth(lit(fam, "up_x", asserted=False), psi)
        assert truth(lit(fam, "down_x", asserted=False), psi)

    def test_conjunction_never_true(self):
        fam = x_family()
        both = And((lit(fam, "up_x"), lit(fam, "down_x")))
        rng = np.random.default_rng(47)
        for _ in range(100):
            assert not truth(both, random_state(2, rng))

    def test_compound_truth_tables(self):
        fam = x_family()
        u, d = lit(fam, "up_x"), lit(fam, "down_x")
        assert truth(Or((u, d)), UP_X)
        assert not truth(Or((u, d)), UP_Z)
        assert truth(And((u.negate(), d.negate())), UP_Z)

    def test_exactly_one_of_literal_and_negation(self):
        rng = np.random.default_rng(53)
        fam = x_family()
        u = lit(fam, "up_x")
        for _ in range(200):
            psi = random_state(2, rng)
            assert truth(u, psi) != truth(u.negate(), psi)


class TestAttribution:
    def test_minimal_on_eigenstate(self):
        assert minimal_attribution(UP_X, x_family()) == {"up_x"}

    def test_minimal_empty_on_superposition(self):
        assert minimal_attribution(UP_Z, x_family()) == set()

    def test_paraconsistent_on_superposition(self):
        assert paraconsistent_attribution(UP_Z, x_family()) == {"up_x", "down_x"}

    def test_paraconsistent_on_eigenstate(self):
        assert paraconsistent_attribution(UP_X, x_family()) == {"up_x"}

    def test_paraconsistent_ignores_skew(self):
        psi = superpose([2 / math.sqrt(7), math.sqrt(3 / 7)], [UP_X, DOWN_X])
        assert paraconsistent_attribution(psi, x_family()) == {"up_x", "down_x"}

    def test_agreement_on_eigenstates(self):
        rng = np.random.default_rng(59)
        fam = x_family()
        for _ in range(200):
            member = fam.members[int(rng.integers(0, 2))]
            phase = np.exp(2j * np.pi * rng.random())
            psi = State(phase * member[1].basis[:, 0])
            mi = minimal_attribution(psi, fam)
            assert mi and mi == paraconsistent_attribution(psi, fam)

    def test_unitary_covariance(self):
        rng = np.random.default_rng(61)
        fam = x_family()
        for _ in range(50):
            psi = random_state(2, rng)
            u = haar_unitary(2, rng)
            fam_u = OrthoFamily(2, [(lab, apply_unitary_subspace(u, sub))
                                    for lab, sub in fam.members])
            assert (minimal_attribution(State(u @ psi.vector), fam_u)
                    == minimal_attribution(psi, fam))


class TestFamilyFromObservable:
    def test_pauli_z(self):
        fam = family_from_observable(Observable(np.diag([1.0, -1.0]), "Z"))
        assert fam.labels == ["-1", "1"]
        assert fam.subspace("1").contains([1, 0])
        assert fam.subspace("-1").contains([0, 1])

    def test_identity_degenerate(self):
        fam = family_from_observable(Observable(np.eye(2), "I"))
        assert len(fam.members) == 1
        assert fam.members[0][1].is_full()

    def test_pauli_x(self):
        fam = family_from_observable(Observable(np.array([[0, 1], [1, 0]],
                                                         dtype=complex), "X"))
        assert fam.subspace("1").contains([R2, R2])
        assert fam.subspace("-1").contains([R2, -R2])

    def test_non_hermitian_rejected(self):
        with pytest.raises(QuantumError):
            Observable(np.array([[0, 1], [0, 0]], dtype=complex), "bad")


class TestCollapse:
    def test_fixed_point_on_member(self):
        fam = x_family()
        got = collapse(UP_X, fam.subspace("up_x"))
        assert abs(abs(np.vdot(got.vector, UP_X.vector)) - 1) < 1e-12

    def test_projects_equal_superposition(self):
        fam = x_family()
        got = collapse(UP_Z, fam.subspace("up_x"))
        assert abs(abs(np.vdot(got.vector, UP_X.vector)) - 1) < 1e-12

    def test_zero_probability_branch(self):
        fam = x_family()
        with pytest.raises(QuantumError):
            collapse(DOWN_X, fam.subspace("up_x"))


class TestOrthoFamilyInvariants:
    def test_non_orthogonal_rejected(self):
        with pytest.raises(QuantumError):
            OrthoFamily(2, [("a", gram_schmidt([[1, 0]])),
                            ("b", gram_schmidt([[R2, R2]]))])

    def test_incomplete_rejected(self):
        with pytest.raises(QuantumError):
            OrthoFamily(3, [("a", gram_schmidt([[1, 0, 0]])),
                            ("b", gram_schmidt([[0, 1, 0]]))])
