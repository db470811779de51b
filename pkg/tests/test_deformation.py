import random

import pytest

from rbsys import (
    GF,
    QQ,
    Algebra,
    CochainComplex,
    DeformationData,
    GaugeSeries,
    Matrix,
    MultiMap,
    OperatorDeformation,
    RBS,
    RotaBaxterSystem,
    apply_gauge,
    compose_gauges,
    constant_deformation,
    constant_operator_deformation,
    gauge_inverse,
    identity_gauge,
    infinitesimal,
    multimap_vector,
    operator_infinitesimal,
    regular_bimodule,
    rigidify,
    trivialize_step,
    verify_deformation,
    verify_operator_deformation,
    vstack,
    zero_algebra,
)
from rbsys.deformation import operator_deformation_ok

from instances import (
    f2_zero_instance,
    instance_set,
    line_system,
    random_gauge,
    random_matrix,
    triangular_system,
)


def _random_order1_kernel_deformation(sys, rng):
    """Sample the order-t coefficient from the degree-2 cocycle space."""
    mod = regular_bimodule(sys)
    cx = CochainComplex(RBS, sys, mod)
    kernel = cx.slice(2).matrix.kernel_basis()
    if kernel.cols == 0:
        return None
    coeffs = random_matrix(sys.field, kernel.cols, 1, rng)
    vec = kernel @ coeffs
    d = sys.dim
    fa = d * d * d
    mu1 = Matrix(sys.field, vec.take_rows(0, fa).a.reshape(d, d * d).copy())
    r1 = Matrix(sys.field, vec.take_rows(fa, fa + d * d).a.reshape(d, d).copy())
    s1 = Matrix(sys.field, vec.take_rows(fa + d * d, fa + 2 * d * d).a.reshape(d, d).copy())
    return DeformationData(1, [sys.alg.mult_matrix(), mu1], [sys.R, r1], [sys.S, s1])


def test_constant_deformation_verifies():
    for sys, _ in instance_set(6, seed=301):
        for order in (0, 1, 3):
            assert verify_deformation(sys, constant_deformation(sys, order)).ok


def test_zero_structure_order1_always_valid():
    rng = random.Random(1)
    field = GF(2)
    z = Matrix.zeros(field, 2, 2)
    sys = RotaBaxterSystem(zero_algebra(field, 2), z, z)
    for _ in range(5):
        defn = DeformationData(
            1,
            [sys.alg.mult_matrix(), random_matrix(field, 2, 4, rng)],
            [sys.R, random_matrix(field, 2, 2, rng)],
            [sys.S, random_matrix(field, 2, 2, rng)],
        )
        assert verify_deformation(sys, defn).ok


def test_nonassociative_square_fails_at_order_two():
    # mu1 with a non-associative square on a zero-multiplication algebra:
    # the order-2 residual is mu1(mu1 x Id) - mu1(Id x mu1) != 0
    field = QQ
    z = Matrix.zeros(field, 2, 2)
    sys = RotaBaxterSystem(zero_algebra(field, 2), z, z)
    bad = Algebra(field, 2, [[[0, 1], [0, 0]], [[1, 0], [0, 0]]])  # e0e0=e1, e1e0=e0
    mu1 = bad.mult_matrix()
    zero_mu = Matrix.zeros(field, 2, 4)
    defn = DeformationData(2, [sys.alg.mult_matrix(), mu1, zero_mu], [sys.R, z, z], [sys.S, z, z])
    report = verify_deformation(sys, defn)
    assert report.ok_through(1)
    assert not report.ok
    assert report.first_failure() == 2


def test_normalisation_enforced():
    sys = line_system(QQ, 1, 0)
    one = Matrix.identity(QQ, 1)
    bad = DeformationData(1, [one.scale(2) @ sys.alg.mult_matrix(), Matrix.zeros(QQ, 1, 1)],
                          [sys.R, Matrix.zeros(QQ, 1, 1)], [sys.S, Matrix.zeros(QQ, 1, 1)])
    with pytest.raises(ValueError):
        verify_deformation(sys, bad)


def test_infinitesimal_examples():
    sys = triangular_system(QQ, 1, 1)
    cochain, ok = infinitesimal(sys, constant_deformation(sys, 2))
    assert ok and cochain.vector.is_zero()

    rng = random.Random(2)
    field = GF(5)
    z = Matrix.zeros(field, 2, 2)
    zsys = RotaBaxterSystem(zero_algebra(field, 2), z, z)
    defn = DeformationData(
        1,
        [zsys.alg.mult_matrix(), random_matrix(field, 2, 4, rng)],
        [zsys.R, random_matrix(field, 2, 2, rng)],
        [zsys.S, random_matrix(field, 2, 2, rng)],
    )
    cochain, ok = infinitesimal(zsys, defn)
    assert ok


def test_infinitesimal_random_kernel_samples():
    rng = random.Random(3)
    count = 0
    for sys, _ in instance_set(10, seed=331):
        defn = _random_order1_kernel_deformation(sys, rng)
        if defn is None:
            continue
        assert verify_deformation(sys, defn).ok_through(1)
        _, ok = infinitesimal(sys, defn)
        assert ok
        count += 1
    assert count >= 5


def test_gauge_inverse_examples():
    field = QQ
    g = identity_gauge(field, 2, 3)
    assert gauge_inverse(g) == g

    rng = random.Random(4)
    psi1 = random_matrix(field, 2, 2, rng)
    zero = Matrix.zeros(field, 2, 2)
    g = GaugeSeries(3, [Matrix.identity(field, 2), -psi1, zero, zero])
    inv = gauge_inverse(g)
    # geometric series: Id + psi1 t + psi1^2 t^2 + psi1^3 t^3
    assert inv.psis[1] == psi1
    assert inv.psis[2] == psi1 @ psi1
    assert inv.psis[3] == psi1 @ psi1 @ psi1
    assert compose_gauges(g, inv) == identity_gauge(field, 2, 3)
    assert compose_gauges(inv, g) == identity_gauge(field, 2, 3)


def test_apply_gauge_identity_and_order1_formula():
    rng = random.Random(5)
    sys = triangular_system(QQ, 1, 2)
    defn = constant_deformation(sys, 2)
    assert apply_gauge(defn, identity_gauge(QQ, 3, 2)) == defn

    g = random_gauge(sys, 2, rng)
    out = apply_gauge(defn, g)
    psi1 = g.psis[1]
    # R'_1 = R_1 + R psi1 - psi1 R (with R_1 = 0 here)
    assert out.Rs[1] == sys.R @ psi1 - psi1 @ sys.R
    assert out.Ss[1] == sys.S @ psi1 - psi1 @ sys.S


def test_apply_gauge_congruence():
    rng = random.Random(6)
    for sys, _ in instance_set(4, seed=361):
        defn = constant_deformation(sys, 3)
        g = random_gauge(sys, 3, rng)
        h = random_gauge(sys, 3, rng)
        assert apply_gauge(apply_gauge(defn, g), h) == apply_gauge(defn, compose_gauges(g, h))


def test_gauged_deformation_verifies_and_infinitesimals_cohomologous():
    rng = random.Random(7)
    for sys, _ in instance_set(6, seed=391):
        mod = regular_bimodule(sys)
        cx = CochainComplex(RBS, sys, mod)
        defn = _random_order1_kernel_deformation(sys, rng)
        if defn is None:
            defn = constant_deformation(sys, 1)
        g = random_gauge(sys, 1, rng)
        gauged = apply_gauge(defn, g)
        assert verify_deformation(sys, gauged).ok_through(1)
        c1, ok1 = infinitesimal(sys, defn)
        c2, ok2 = infinitesimal(sys, gauged)
        assert ok1 and ok2
        diff = c1 - c2
        pre = cx.coboundary_preimage(diff)
        assert pre is not None
        assert cx.slice(1).matrix @ pre.vector == diff.vector


def test_trivialize_step_examples():
    sys = triangular_system(QQ, 2, 1)
    const = constant_deformation(sys, 2)
    step = trivialize_step(sys, const, 0)
    assert step is not None
    gauge, out = step
    assert gauge == identity_gauge(QQ, 3, 2)
    assert out == const

    # coefficient built as d1 of a gauge shape is killed exactly
    rng = random.Random(8)
    mod = regular_bimodule(sys)
    cx = CochainComplex(RBS, sys, mod)
    psi = random_matrix(QQ, 3, 3, rng)
    vec = cx.slice(1).matrix @ vstack(
        [
            multimap_vector(MultiMap(sys.alg, 1, psi)),
            Matrix.zeros(QQ, 3, 1),
            Matrix.zeros(QQ, 3, 1),
        ]
    )
    d = 3
    fa = d**3
    mu1 = Matrix(QQ, vec.take_rows(0, fa).a.reshape(d, d * d).copy())
    r1 = Matrix(QQ, vec.take_rows(fa, fa + d * d).a.reshape(d, d).copy())
    s1 = Matrix(QQ, vec.take_rows(fa + d * d, fa + 2 * d * d).a.reshape(d, d).copy())
    defn = DeformationData(1, [sys.alg.mult_matrix(), mu1], [sys.R, r1], [sys.S, s1])
    step = trivialize_step(sys, defn, 0)
    assert step is not None
    _, out = step
    assert out.coefficients_vanish(1, 1)


def test_trivialize_step_stuck_on_zero_structure():
    sys, _ = f2_zero_instance()
    field = sys.field
    one = Matrix.identity(field, 1)
    defn = DeformationData(
        1, [sys.alg.mult_matrix(), one], [sys.R, Matrix.zeros(field, 1, 1)],
        [sys.S, Matrix.zeros(field, 1, 1)],
    )
    assert verify_deformation(sys, defn).ok
    assert trivialize_step(sys, defn, 0) is None


def test_rigidify_round_trip_random():
    rng = random.Random(9)
    for sys, _ in instance_set(6, seed=421):
        for order in (2, 3):
            g = random_gauge(sys, order, rng)
            defn = apply_gauge(constant_deformation(sys, order), g)
            report = rigidify(sys, defn)
            assert report.success
            final = apply_gauge(defn, report.gauge)
            assert final.coefficients_vanish(1, order)


def test_rigidify_stuck_report():
    sys, _ = f2_zero_instance()
    field = sys.field
    one = Matrix.identity(field, 1)
    z = Matrix.zeros(field, 1, 1)
    defn = DeformationData(2, [sys.alg.mult_matrix(), one, z], [sys.R, z, z], [sys.S, z, z])
    report = rigidify(sys, defn)
    assert not report.success
    assert report.stuck_order == 1
    assert not report.stuck_class.vector.is_zero()


def test_operator_deformation_examples():
    sys = triangular_system(QQ, 1, 1)
    od = constant_operator_deformation(sys, 2)
    assert operator_deformation_ok(verify_operator_deformation(sys, od))

    rng = random.Random(10)
    field = GF(5)
    zsys = RotaBaxterSystem(
        zero_algebra(field, 2), random_matrix(field, 2, 2, rng), random_matrix(field, 2, 2, rng)
    )
    od = OperatorDeformation(
        2,
        [zsys.R] + [random_matrix(field, 2, 2, rng) for _ in range(2)],
        [zsys.S] + [random_matrix(field, 2, 2, rng) for _ in range(2)],
    )
    assert operator_deformation_ok(verify_operator_deformation(zsys, od))

    # order-0 residual of the verifier agrees with the axiom residual
    bad_sys = line_system(QQ, 1, 1)
    od0 = OperatorDeformation(0, [bad_sys.R], [bad_sys.S])
    residuals = verify_operator_deformation(bad_sys, od0)
    assert not operator_deformation_ok(residuals)


def test_operator_infinitesimal_random():
    rng = random.Random(11)
    checked = 0
    for sys, _ in instance_set(10, seed=451):
        mod = regular_bimodule(sys)
        from rbsys import partial

        kernel = partial(1, sys, mod).matrix.kernel_basis()
        if kernel.cols == 0:
            continue
        vec = kernel @ random_matrix(sys.field, kernel.cols, 1, rng)
        d = sys.dim
        r1 = Matrix(sys.field, vec.take_rows(0, d * d).a.reshape(d, d).copy())
        s1 = Matrix(sys.field, vec.take_rows(d * d, 2 * d * d).a.reshape(d, d).copy())
        od = OperatorDeformation(1, [sys.R, r1], [sys.S, s1])
        assert operator_deformation_ok(verify_operator_deformation(sys, od), through=1)
        _, ok = operator_infinitesimal(sys, od)
        assert ok
        checked += 1
    assert checked >= 5


def test_operator_infinitesimal_guard():
    sys = triangular_system(QQ, 1, 1)
    one = Matrix.identity(QQ, 3)
    od = OperatorDeformation(1, [sys.R, one], [sys.S, one])
    if not operator_deformation_ok(verify_operator_deformation(sys, od), through=1):
        with pytest.raises(ValueError):
            operator_infinitesimal(sys, od)


def test_order0_residuals_match_axioms():
    # a non-system pair: residuals at order 0 are exactly the axiom defects
    sys_bad = line_system(QQ, 1, 1)
    defn = constant_deformation(sys_bad, 0)
    report = verify_deformation(sys_bad, defn)
    assert not report.ok
    assert report.first_failure() == 0
