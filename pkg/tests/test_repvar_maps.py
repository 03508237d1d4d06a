import numpy as np
import pytest

from ymstrata.hn_types import HNType, SymmetricTypeClass, enumerate_symmetric, Surface
from ymstrata.poincare import EmptyStratumError
from ymstrata.repvar import (
    GroupTuplePoint,
    Kind,
    LiftError,
    UnsupportedCase,
    bundle_sign,
    central_handle,
    clock,
    det_reduction_check,
    e_mu,
    embed_fixed,
    haar_so3,
    m_product,
    membership,
    obstruction,
    obstruction_class,
    obstruction_laws,
    obstruction_so3,
    orientable_point,
    phi,
    phi_section,
    quaternion_lift,
    random_flat_so3,
    random_flat_so3_nonorientable,
    sample_orbit,
    shift,
    tau_involution,
    witness_point,
)
from ymstrata.repvar.linalg import rotation
from ymstrata.repvar.obstruction import quaternion_to_rotation

I3 = np.eye(3, dtype=complex)


def _identity_z(kind, n=3, ell=1):
    eye = np.eye(n, dtype=complex)
    extra = {"d": eye, "dbar": eye} if kind.cross == 2 else {}
    X = np.zeros((n, n), dtype=complex) if kind in (Kind.ZYM_1, Kind.ZYM_2) else None
    return GroupTuplePoint(f"U({n})", kind, (eye,) * (2 * ell), c=eye, Vbar=(eye,) * (2 * ell), cbar=eye, X=X, **extra)


@pytest.mark.parametrize("kind", [Kind.ZFLAT_1, Kind.ZFLAT_2, Kind.ZYM_1, Kind.ZYM_2])
def test_identity_z_point_maps_to_identity(kind):
    image = phi(_identity_z(kind))
    assert image.kind in (Kind.FLAT_0, Kind.YM_0)
    assert all(np.array_equal(a, I3) for a in image.V)
    assert image.ell == 2 + kind.cross - 1


@pytest.mark.parametrize("i", [1, 2])
def test_section_of_identity_is_identity(i):
    q = GroupTuplePoint("U(3)", Kind.FLAT_0, (I3,) * (2 * (2 + i - 1)))
    z = phi_section(q, i)
    assert z.kind is (Kind.ZFLAT_1 if i == 1 else Kind.ZFLAT_2)
    assert np.array_equal(z.cbar, I3)
    assert membership(z).passed


@pytest.mark.parametrize("i", [1, 2])
@pytest.mark.parametrize("seed", range(5))
def test_section_round_trip(i, seed):
    rng = np.random.default_rng(seed)
    genus = 2 + i - 1
    q = orientable_point(HNType([(1, 1), (1, 0), (1, -1)]), genus, rng)
    z = phi_section(q, i)
    assert membership(z, 1e-10).passed
    assert phi(z).distance(q) < 1e-10


def test_section_rejects_wrong_genus():
    q = GroupTuplePoint("U(3)", Kind.FLAT_0, (I3,) * 4)
    with pytest.raises(ValueError):
        phi_section(q, 2)
    with pytest.raises(ValueError):
        phi_section(q, 3)


@pytest.mark.parametrize("i", [1, 2])
def test_tau_is_an_involution_on_random_points(i):
    rng = np.random.default_rng(20 + i)
    q = orientable_point(HNType([(2, 1), (1, -2)]), 2 + i - 1, rng)
    z = sample_orbit(phi_section(q, i), rng)
    tz = tau_involution(z)
    assert membership(tz).passed
    assert tau_involution(tz).distance(z) < 1e-12


def test_tau_on_flat_point_swaps_data():
    z = phi_section(orientable_point(HNType([(2, 0)]), 2, np.random.default_rng(1)), 1)
    z = GroupTuplePoint(z.group_tag, Kind.ZFLAT_1, z.V, c=z.c, Vbar=z.Vbar, cbar=z.cbar)
    tz = tau_involution(z)
    assert tz.X is None
    assert all(np.array_equal(a, b) for a, b in zip(tz.V, z.Vbar))
    assert all(np.array_equal(a, b) for a, b in zip(tz.Vbar, z.V))
    assert np.array_equal(tz.c, z.cbar) and np.array_equal(tz.cbar, z.c)


@pytest.mark.parametrize("i", [1, 2])
def test_embedded_witnesses_are_tau_fixed(i):
    for cls in enumerate_symmetric(3, i, Surface(1, i), 12):
        for sign in cls.signs:
            x = witness_point(cls, 1, i, sign=sign, rng=np.random.default_rng(4))
            y = embed_fixed(x)
            assert membership(y).passed
            assert tau_involution(y).distance(y) < 1e-12


def test_embed_identity_doubles():
    x = GroupTuplePoint("U(3)", Kind.FLAT_1, (I3, I3), c=I3)
    y = embed_fixed(x)
    assert y.kind is Kind.ZFLAT_1 and y.identical(_identity_z(Kind.ZFLAT_1))


def test_sample_orbit_is_seed_repeatable():
    p = witness_point(HNType([(1, 1), (1, -1)]), 2, 1)
    a, b = sample_orbit(p, 123), sample_orbit(p, 123)
    assert a.identical(b)
    assert not a.identical(sample_orbit(p, 124))
    assert membership(a, 1e-10).passed


def test_diagonal_orbit_keeps_tau_fixed_points_fixed():
    y = embed_fixed(witness_point(HNType([(1, 2), (1, 0), (1, -2)]), 1, 2, rng=np.random.default_rng(9)))
    moved = sample_orbit(y, 5, diagonal=True)
    assert tau_involution(moved).distance(moved) < 1e-12
    generic = sample_orbit(y, 5)
    assert tau_involution(generic).distance(generic) > 1e-3


def test_central_handle_hits_the_right_scalar():
    for n in range(1, 6):
        for k in range(-3, 4):
            a, b = central_handle(n, k)
            target = np.exp(-2j * np.pi * k / n) * np.eye(n)
            assert np.linalg.norm(m_product([a, b]) - target) < 1e-13


def test_flat_witness_with_minus_sign():
    cls = SymmetricTypeClass.from_type(HNType([(3, 0)]), 1)
    p = witness_point(cls, 1, 1, sign=-1)
    assert np.array_equal(p.c, np.diag([-1, 1, 1]).astype(complex))
    assert all(np.array_equal(a, I3) for a in p.V)
    assert np.array_equal(p.X, np.zeros((3, 3)))
    assert membership(p).passed and bundle_sign(p) == -1


def test_paired_rank_two_witness_has_forced_sign():
    p = witness_point(HNType([(1, 1), (1, -1)]), 1, 1)
    assert membership(p, 1e-10).passed
    assert abs(np.linalg.det(p.c) - 1) < 1e-12
    with pytest.raises(EmptyStratumError):
        witness_point(HNType([(1, 1), (1, -1)]), 1, 1, sign=-1)


def test_orientable_witness_rank_two_degree_one():
    p = witness_point(HNType([(2, 1)]), 2, 0)
    assert np.array_equal(p.V[0], clock(2)) and np.allclose(p.V[1], shift(2))
    assert all(np.array_equal(a, np.eye(2)) for a in p.V[2:])
    assert np.linalg.norm(m_product(p.V) + np.eye(2)) < 1e-14
    assert membership(p).passed


def test_rp2_is_unsupported():
    with pytest.raises(UnsupportedCase):
        witness_point(HNType([(2, 0)]), 0, 1)


def test_klein_bottle_witness_is_supported():
    p = witness_point(HNType([(1, 1), (1, 0), (1, -1)]), 0, 2, sign=-1)
    assert membership(p).passed and bundle_sign(p) == -1


def test_e_mu_is_an_involution():
    cls = SymmetricTypeClass.from_type(HNType([(2, 1), (1, 0), (2, -1)]), 1)
    e = e_mu(cls)
    assert np.array_equal(e @ e, np.eye(5))
    assert abs(np.linalg.det(e) - (-1) ** cls.n_prime) < 1e-14


@pytest.mark.parametrize("i", [1, 2])
def test_det_relation_for_all_small_types(i):
    for n in (2, 3, 4):
        for cls in enumerate_symmetric(n, i, Surface(2, i), 12):
            for sign in cls.signs:
                p = witness_point(cls, 2, i, sign=sign, rng=np.random.default_rng(n))
                assert det_reduction_check(p, cls, 1e-10).passed
                assert bundle_sign(p) == sign


def test_det_relation_identity_and_paired_cases():
    report = det_reduction_check(GroupTuplePoint("U(3)", Kind.FLAT_1, (I3, I3), c=I3), HNType([(3, 0)]))
    assert report.passed and "det(c)=+1*det(C)" in dict(report.residuals)
    p = witness_point(HNType([(1, 2), (1, -2)]), 1, 1)
    report = det_reduction_check(p, HNType([(1, 2), (1, -2)]))
    assert [label for label, _ in report.residuals] == ["block:e_mu*c", "det(c)=-1"]
    assert report.passed


def test_quaternion_lift_round_trip():
    rng = np.random.default_rng(0)
    for _ in range(20):
        R = haar_so3(rng)
        q = quaternion_lift(R)
        assert abs(np.linalg.norm(q) - 1) < 1e-14
        assert np.linalg.norm(quaternion_to_rotation(q) - R) < 1e-13
    with pytest.raises(LiftError):
        quaternion_lift(np.diag([1.0, 1.0, -1.0]))


def test_obstruction_examples():
    assert obstruction([np.eye(3), np.eye(3)]) == 1
    a, b = np.diag([1.0, -1.0, -1.0]), np.diag([-1.0, 1.0, -1.0])
    assert obstruction([a, b]) == -1
    assert obstruction([a, b, a, b]) == 1
    assert obstruction([a, b, np.eye(3), np.eye(3)]) == -1


def test_obstruction_is_conjugation_invariant_and_multiplicative():
    rng = np.random.default_rng(8)
    for _ in range(50):
        p, q = random_flat_so3(2, rng), random_flat_so3(1, rng)
        g = haar_so3(rng)
        moved = sample_orbit(p, rng)
        assert obstruction_so3(moved) == obstruction_so3(p)
        assert obstruction([g @ a @ g.T for a in p.V]) == obstruction(p.V)
        joined = GroupTuplePoint("SO(3)", Kind.FLAT_0, p.V + q.V)
        assert obstruction_so3(joined) == obstruction_so3(p) * obstruction_so3(q)


def test_obstruction_rejects_non_flat_tuples():
    with pytest.raises(ValueError):
        obstruction([rotation(np.array([1.0, 0, 0]), 0.3), rotation(np.array([0, 1.0, 0]), 0.4)])


def test_obstruction_class_is_trivial_for_unitary_groups():
    assert obstruction_class(GroupTuplePoint("U(3)", Kind.FLAT_1, (I3, I3), c=I3)) == 1
    with pytest.raises(ValueError):
        obstruction_class(orientable_point(HNType([(1, 1), (1, -1)]), 1))


def test_obstruction_laws_identity():
    eye = np.eye(3)
    y = GroupTuplePoint("SO(3)", Kind.ZFLAT_1, (eye, eye), c=eye, Vbar=(eye, eye), cbar=eye)
    x = GroupTuplePoint("SO(3)", Kind.FLAT_1, (eye, eye), c=eye)
    assert obstruction_laws(y, (x,)).passed


@pytest.mark.parametrize("i", [1, 2])
def test_obstruction_laws_random(i):
    rng = np.random.default_rng(100 + i)
    signs = set()
    for _ in range(100):
        q = random_flat_so3(2 + i - 1, rng)
        y = phi_section(q, i)
        x = random_flat_so3_nonorientable(1, i, rng)
        assert membership(x).passed
        assert obstruction_laws(y, (x,)).passed
        signs.add(obstruction_so3(y))
    assert signs == {1, -1}


def test_one_crosscap_points_satisfy_the_derived_stabilizer_relation():
    rng = np.random.default_rng(31)
    q = orientable_point(HNType([(1, 2), (2, 0), (1, -3)]), 2, rng)
    z = sample_orbit(phi_section(q, 1), rng)
    residuals = dict(membership(z).residuals)
    assert residuals["derived:stab:c*cbar"] < 1e-12
