import numpy as np
import pytest

from skewflow import (
    StructureTensor,
    act,
    bracket_eval,
    commutator,
    delta,
    delta_star,
    derivation_algebra,
    direct_sum,
    dim4_family,
    hermitian_part,
    inner_product,
    jacobi_residual,
    mu_he,
    random_tensor,
    semidirect_extension,
    sl2_compact,
    structure_invariants,
)


def _rand_matrix(rng, n):
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


class TestStructureTensor:
    def test_antisymmetry_enforced(self):
        c = np.zeros((2, 2, 2), dtype=complex)
        c[0, 1, 0] = 1.0
        c[1, 0, 0] = -1.0
        t = StructureTensor(c)
        assert np.array_equal(t.coeff, -t.coeff.transpose(1, 0, 2))

    def test_symmetric_part_projected_out(self):
        c = np.zeros((2, 2, 2), dtype=complex)
        c[0, 1, 0] = 1.0
        c[1, 0, 0] = 1.0  # symmetric in the first two slots
        assert StructureTensor(c).is_zero()

    def test_bad_shape_rejected(self):
        with pytest.raises(ValueError):
            StructureTensor(np.zeros((2, 3, 2), dtype=complex))

    def test_nonfinite_rejected(self):
        c = np.zeros((2, 2, 2), dtype=complex)
        c[0, 1, 0], c[1, 0, 0] = np.nan, -np.nan
        with pytest.raises(ValueError):
            StructureTensor(c)

    def test_from_brackets_mirrors(self):
        t = StructureTensor.from_brackets(3, {(0, 1): {2: 2.5}})
        assert t.coeff[0, 1, 2] == 2.5
        assert t.coeff[1, 0, 2] == -2.5

    def test_zero_and_norm(self):
        z = StructureTensor.zero(4)
        assert z.is_zero() and z.norm() == 0.0
        he = mu_he(3).tensor
        # two mirrored unit entries
        assert he.norm() == pytest.approx(np.sqrt(2.0))
        assert inner_product(he, he).real == pytest.approx(2.0)

    def test_normalized(self):
        t = random_tensor(4, seed=3)
        assert t.normalized().norm() == pytest.approx(1.0)
        with pytest.raises(ValueError):
            StructureTensor.zero(3).normalized()

    def test_eq_hash(self):
        a = mu_he(3).tensor
        b = StructureTensor.from_brackets(3, {(0, 1): {2: 1}})
        assert a == b and hash(a) == hash(b)
        assert a != mu_he(4).tensor


def test_bracket_eval_sl2():
    t = sl2_compact().tensor
    e = np.eye(3, dtype=complex)
    assert np.allclose(bracket_eval(t, e[0], e[1]), e[2])
    assert np.allclose(bracket_eval(t, e[1], e[2]), e[0])
    assert np.allclose(bracket_eval(t, e[0], e[2]), -e[1])
    # bilinear antisymmetric
    x = np.array([1.0, 2.0, -1.0j])
    assert np.allclose(bracket_eval(t, x, x), 0.0)


def test_jacobi_residual_zero_on_lie_positive_otherwise():
    assert jacobi_residual(sl2_compact().tensor) <= 1e-14
    assert jacobi_residual(mu_he(5).tensor) <= 1e-14
    # a generic antisymmetric tensor violates Jacobi
    assert jacobi_residual(random_tensor(4, seed=11)) > 1e-3


class TestAction:
    def test_identity(self):
        t = dim4_family("g6").tensor
        assert np.allclose(act(np.eye(4), t).coeff, t.coeff)

    def test_composition(self):
        rng = np.random.default_rng(5)
        t = random_tensor(3, seed=1)
        g, h = _rand_matrix(rng, 3), _rand_matrix(rng, 3)
        lhs = act(g @ h, t)
        rhs = act(g, act(h, t))
        assert np.allclose(lhs.coeff, rhs.coeff, atol=1e-10)

    def test_singular_rejected(self):
        t = random_tensor(3, seed=2)
        g = np.diag([1.0, 1.0, 0.0])
        with pytest.raises((ValueError, np.linalg.LinAlgError)):
            act(g, t)

    def test_jacobi_invariant(self):
        rng = np.random.default_rng(8)
        t = dim4_family("n4").tensor
        g = _rand_matrix(rng, 4)
        assert jacobi_residual(act(g, t)) <= 1e-10


def test_inner_product_sesquilinear():
    a, b = random_tensor(3, seed=4), random_tensor(3, seed=5)
    z = 0.3 - 1.7j
    za = StructureTensor(z * a.coeff)
    zb = StructureTensor(z * b.coeff)
    # linear in the first slot, conjugate-linear in the second
    assert inner_product(za, b) == pytest.approx(z * inner_product(a, b))
    assert inner_product(a, zb) == pytest.approx(np.conj(z) * inner_product(a, b))
    assert inner_product(a, a).imag == pytest.approx(0.0)
    assert inner_product(b, a) == pytest.approx(np.conj(inner_product(a, b)))


def test_delta_of_identity_is_mu():
    mu = random_tensor(4, seed=21)
    assert np.allclose(delta(mu, np.eye(4)).coeff, mu.coeff)


def test_delta_star_is_adjoint_of_delta():
    # <lam, delta_mu(A)> = tr(delta_star(mu, lam) A*)
    rng = np.random.default_rng(9)
    mu = random_tensor(4, seed=6)
    lam = random_tensor(4, seed=7)
    a = _rand_matrix(rng, 4)
    lhs = inner_product(lam, delta(mu, a))
    rhs = np.trace(delta_star(mu, lam) @ a.conj().T)
    assert lhs == pytest.approx(rhs, rel=1e-10)


class TestDerivations:
    def test_sl2_inner_derivations(self):
        ders = derivation_algebra(sl2_compact().tensor)
        assert ders.dim_complex == 3  # semisimple: all derivations inner

    def test_heisenberg(self):
        ders = derivation_algebra(mu_he(3).tensor)
        assert ders.dim_complex == 6
        mu = mu_he(3).tensor
        for dmat in ders.hermitian_basis:
            assert np.allclose(hermitian_part(dmat), dmat)
            assert delta(mu, dmat).norm() <= 1e-9

    def test_basis_annihilates(self):
        mu = dim4_family("g6").tensor
        ders = derivation_algebra(mu)
        for amat in ders.complex_basis:
            assert delta(mu, amat).norm() <= 1e-9 * mu.norm()


def test_structure_invariants_flags():
    sl2 = structure_invariants(sl2_compact().tensor)
    assert sl2.is_lie and sl2.is_semisimple and not sl2.is_solvable
    he = structure_invariants(mu_he(3).tensor)
    assert he.is_nilpotent and he.is_solvable and not he.is_semisimple
    assert he.dim_center == 1
    r2 = structure_invariants(dim4_family("r2+C2").tensor)
    assert r2.is_solvable and not r2.is_nilpotent
    c4 = structure_invariants(StructureTensor.zero(4))
    assert c4.is_lie and c4.dim_center == 4
    non_lie = structure_invariants(random_tensor(3, seed=13))
    assert not non_lie.is_lie and non_lie.is_nilpotent is None


def test_direct_sum_blocks():
    a = sl2_compact().tensor
    b = mu_he(3).tensor
    s = direct_sum(a, b)
    assert s.dim == 6
    assert jacobi_residual(s) <= 1e-14
    assert np.allclose(s.coeff[:3, :3, :3], a.coeff)
    assert np.allclose(s.coeff[3:, 3:, 3:], b.coeff)
    # cross blocks vanish
    assert np.linalg.norm(s.coeff[:3, 3:, :]) == 0.0
    assert inner_product(s, s).real == pytest.approx(
        inner_product(a, a).real + inner_product(b, b).real
    )


class TestSemidirect:
    def test_rejects_zero_ideal(self):
        with pytest.raises(ValueError):
            semidirect_extension(StructureTensor.zero(3), [np.eye(3)], -6.0)

    def test_rejects_nonnegative_constant(self):
        he = mu_he(3).tensor.normalized()
        with pytest.raises(ValueError):
            semidirect_extension(he, [np.diag([1.0, 1.0, 2.0])], 1.0)

    def test_rejects_non_derivation(self):
        he = mu_he(3).tensor.normalized()
        with pytest.raises(ValueError):
            semidirect_extension(he, [np.diag([1.0, 1.0, 5.0])], -6.0)

    def test_extension_is_lie_and_contains_ideal(self):
        he = mu_he(3).tensor.normalized()
        ext = semidirect_extension(he, [np.diag([1.0, 1.0, 2.0]).astype(complex)], -6.0)
        assert ext.dim == 4
        assert jacobi_residual(ext) <= 1e-12
        # ideal slot keeps the heisenberg bracket (up to the ideal block)
        assert np.allclose(ext.coeff[1:, 1:, 1:], he.coeff)
        # the adjoined generator acts on the ideal, never lands outside it
        assert np.linalg.norm(ext.coeff[0, 1:, 0]) == 0.0


def test_commutator_and_hermitian_part():
    rng = np.random.default_rng(1)
    a, b = _rand_matrix(rng, 4), _rand_matrix(rng, 4)
    assert np.allclose(commutator(a, b), a @ b - b @ a)
    h = hermitian_part(a)
    assert np.allclose(h, h.conj().T)
