"""Truncated formal deformations of a Rota-Baxter system.

A deformation of order N is a triple of coefficient families mu_0..mu_N,
R_0..R_N, S_0..S_N (normalised so order 0 is the undeformed structure),
read as power series truncated after t^N.  Verification expands the three
defining equations of a deformed system and collects the coefficient of
each t^n:

  assoc_n = sum_{i+j=n}   mu_i(mu_j (x) Id) - mu_i(Id (x) mu_j)
  resR_n  = sum_{i+j+k=n} mu_i(R_j (x) R_k) - R_i mu_j(R_k (x) Id)
                                            - R_i mu_j(Id (x) S_k)
  resS_n  = the same with S outside and mu_i(S_j (x) S_k) inside

Gauges are truncated series Id + Psi_1 t + ... acting by conjugation; the
order-t coefficient of any valid deformation is a 2-cocycle of the total
complex, and gauge changes move it by a coboundary.
"""

from __future__ import annotations

from .algebra import MultiMap, multimap_from_vector
from .cohomology import (
    RBS,
    RBSO,
    CochainComplex,
    hochschild_slice,
    pack_rbs_cochain,
    pack_rbso_cochain,
    phi,
)
from .bimodules import regular_bimodule
from .linalg import Matrix, vstack


class DeformationData:
    """Coefficient families (mus, Rs, Ss) of a deformation truncated at order N."""

    __slots__ = ("order", "mus", "Rs", "Ss")

    def __init__(self, order, mus, Rs, Ss):
        if not (len(mus) == len(Rs) == len(Ss) == order + 1):
            raise ValueError(f"need {order + 1} coefficients per family")
        self.order = order
        self.mus = list(mus)
        self.Rs = list(Rs)
        self.Ss = list(Ss)

    def __eq__(self, other):
        return (
            isinstance(other, DeformationData)
            and self.order == other.order
            and self.mus == other.mus
            and self.Rs == other.Rs
            and self.Ss == other.Ss
        )

    def coefficients_vanish(self, lo, hi):
        """True when mus, Rs, Ss are all zero in orders lo..hi inclusive."""
        return all(
            self.mus[k].is_zero() and self.Rs[k].is_zero() and self.Ss[k].is_zero()
            for k in range(lo, min(hi, self.order) + 1)
        )

    def __repr__(self):
        return f"DeformationData(order={self.order})"


def constant_deformation(sys, order):
    """The deformation with no higher coefficients at all."""
    field, d = sys.field, sys.dim
    zmu = Matrix.zeros(field, d, d * d)
    zop = Matrix.zeros(field, d, d)
    mus = [sys.alg.mult_matrix()] + [zmu] * order
    return DeformationData(order, mus, [sys.R] + [zop] * order, [sys.S] + [zop] * order)


def _check_normalised(sys, defn):
    if defn.mus[0] != sys.alg.mult_matrix() or defn.Rs[0] != sys.R or defn.Ss[0] != sys.S:
        raise ValueError("deformation is not normalised to the undeformed structure at order 0")


class DeformationReport:
    """Per-order residual maps; empty residuals at every order means valid."""

    __slots__ = ("residuals",)

    def __init__(self, residuals):
        self.residuals = residuals

    @property
    def ok(self):
        return all(a.is_zero() and r.is_zero() and s.is_zero() for a, r, s in self.residuals)

    def ok_through(self, order):
        return all(
            a.is_zero() and r.is_zero() and s.is_zero()
            for a, r, s in self.residuals[: order + 1]
        )

    def first_failure(self):
        for n, (a, r, s) in enumerate(self.residuals):
            if not (a.is_zero() and r.is_zero() and s.is_zero()):
                return n
        return None

    def __repr__(self):
        return f"DeformationReport(ok={self.ok})"


def _deformation_residuals(field, d, mus, Rs, Ss, order):
    idd = Matrix.identity(field, d)
    out = []
    for n in range(order + 1):
        assoc = Matrix.zeros(field, d, d**3)
        for i in range(n + 1):
            j = n - i
            assoc = assoc + mus[i] @ mus[j].kron(idd) - mus[i] @ idd.kron(mus[j])
        res_r = Matrix.zeros(field, d, d * d)
        res_s = Matrix.zeros(field, d, d * d)
        for i in range(n + 1):
            for j in range(n + 1 - i):
                k = n - i - j
                res_r = (
                    res_r
                    + mus[i] @ Rs[j].kron(Rs[k])
                    - Rs[i] @ mus[j] @ Rs[k].kron(idd)
                    - Rs[i] @ mus[j] @ idd.kron(Ss[k])
                )
                res_s = (
                    res_s
                    + mus[i] @ Ss[j].kron(Ss[k])
                    - Ss[i] @ mus[j] @ Rs[k].kron(idd)
                    - Ss[i] @ mus[j] @ idd.kron(Ss[k])
                )
        out.append((assoc, res_r, res_s))
    return out


def verify_deformation(sys, defn):
    """Expand the deformed equations and report the residual of each order."""
    _check_normalised(sys, defn)
    residuals = _deformation_residuals(
        sys.field, sys.dim, defn.mus, defn.Rs, defn.Ss, defn.order
    )
    return DeformationReport(residuals)


def infinitesimal(sys, defn):
    """Package the order-t coefficient as a degree-2 total cochain.

    Requires the deformation to hold through order 1; returns the cochain
    together with its cocycle verdict (always true for valid input).
    """
    _check_normalised(sys, defn)
    if defn.order < 1:
        raise ValueError("need at least order 1")
    report = verify_deformation(sys, defn)
    if not report.ok_through(1):
        raise ValueError("order-1 deformation equations fail")
    mod = regular_bimodule(sys)
    m = mod.dim
    f = MultiMap(sys.alg, 2, defn.mus[1])
    x = MultiMap(sys.alg, 1, defn.Rs[1])
    y = MultiMap(sys.alg, 1, defn.Ss[1])
    cochain = pack_rbs_cochain(f, x, y)
    cx = CochainComplex(RBS, sys, mod)
    return cochain, cx.is_cocycle(cochain)


class GaugeSeries:
    """A truncated series Id + Psi_1 t + ... + Psi_N t^N of maps A -> A."""

    __slots__ = ("order", "psis")

    def __init__(self, order, psis):
        if len(psis) != order + 1:
            raise ValueError(f"need {order + 1} coefficients")
        first = psis[0]
        if first != Matrix.identity(first.field, first.rows):
            raise ValueError("order-0 coefficient must be the identity")
        self.order = order
        self.psis = list(psis)

    def __eq__(self, other):
        return (
            isinstance(other, GaugeSeries)
            and self.order == other.order
            and self.psis == other.psis
        )

    def __repr__(self):
        return f"GaugeSeries(order={self.order})"


def identity_gauge(field, d, order):
    zero = Matrix.zeros(field, d, d)
    return GaugeSeries(order, [Matrix.identity(field, d)] + [zero] * order)


def compose_gauges(g, h):
    """The series of x -> g(h(x)), truncated at the common order."""
    if g.order != h.order:
        raise ValueError("order mismatch")
    field = g.psis[0].field
    d = g.psis[0].rows
    psis = []
    for n in range(g.order + 1):
        acc = Matrix.zeros(field, d, d)
        for i in range(n + 1):
            acc = acc + g.psis[i] @ h.psis[n - i]
        psis.append(acc)
    return GaugeSeries(g.order, psis)


def gauge_inverse(g):
    """Series inverse: compose_gauges(gauge_inverse(g), g) is the identity."""
    field = g.psis[0].field
    d = g.psis[0].rows
    thetas = [Matrix.identity(field, d)]
    for n in range(1, g.order + 1):
        acc = Matrix.zeros(field, d, d)
        for j in range(1, n + 1):
            acc = acc + thetas[n - j] @ g.psis[j]
        thetas.append(-acc)
    return GaugeSeries(g.order, thetas)


def apply_gauge(defn, g):
    """Transport a deformation along a gauge.

    mu' = g^-1 o mu o (g (x) g), R' = g^-1 o R o g, S' likewise, truncated.
    A valid deformation stays valid.
    """
    if g.order != defn.order:
        raise ValueError("order mismatch")
    field = g.psis[0].field
    d = g.psis[0].rows
    inv = gauge_inverse(g).psis
    mus, Rs, Ss = [], [], []
    for n in range(defn.order + 1):
        mu_n = Matrix.zeros(field, d, d * d)
        r_n = Matrix.zeros(field, d, d)
        s_n = Matrix.zeros(field, d, d)
        for i in range(n + 1):
            for j in range(n + 1 - i):
                rem = n - i - j
                r_n = r_n + inv[i] @ defn.Rs[j] @ g.psis[rem]
                s_n = s_n + inv[i] @ defn.Ss[j] @ g.psis[rem]
                for k in range(rem + 1):
                    mu_n = mu_n + inv[i] @ defn.mus[j] @ g.psis[k].kron(g.psis[rem - k])
        mus.append(mu_n)
        Rs.append(r_n)
        Ss.append(s_n)
    return DeformationData(defn.order, mus, Rs, Ss)


def trivialize_step(sys, defn, n):
    """Kill the order n + 1 coefficient with a gauge Id - Psi t^(n+1).

    Requires the deformation to verify and its coefficients to vanish in
    orders 1..n.  Packages the next coefficient as a degree-2 cochain
    (asserting it is a cocycle) and solves the gauge-shaped coboundary
    system d(Psi, (0, 0)) = cocycle; returns None when that restricted
    system is inconsistent.
    """
    _check_normalised(sys, defn)
    if n + 1 > defn.order:
        raise ValueError("nothing to trivialise beyond the truncation order")
    if not defn.coefficients_vanish(1, n):
        raise ValueError(f"coefficients in orders 1..{n} must vanish first")
    report = verify_deformation(sys, defn)
    if not report.ok:
        raise ValueError("deformation equations fail")
    mod = regular_bimodule(sys)
    f = MultiMap(sys.alg, 2, defn.mus[n + 1])
    x = MultiMap(sys.alg, 1, defn.Rs[n + 1])
    y = MultiMap(sys.alg, 1, defn.Ss[n + 1])
    target = pack_rbs_cochain(f, x, y)
    cx = CochainComplex(RBS, sys, mod)
    if not cx.is_cocycle(target):
        raise AssertionError("leading coefficient of a valid deformation is not a cocycle")
    field, d = sys.field, sys.dim
    delta1 = hochschild_slice(sys.alg, mod.actions, 1)
    phi1 = phi(1, sys, mod)
    system = vstack([delta1, -phi1])
    solution = system.solve(target.vector)
    if solution is None:
        return None
    psi = multimap_from_vector(sys.alg, 1, d, solution).mat
    zero = Matrix.zeros(field, d, d)
    psis = [Matrix.identity(field, d)] + [zero] * defn.order
    psis[n + 1] = -psi
    gauge = GaugeSeries(defn.order, psis)
    transformed = apply_gauge(defn, gauge)
    if not transformed.coefficients_vanish(1, n + 1):
        raise AssertionError("gauge step failed to clear the target order")
    return gauge, transformed


class RigidifyReport:
    __slots__ = ("success", "gauge", "result", "stuck_order", "stuck_class")

    def __init__(self, success, gauge, result, stuck_order=None, stuck_class=None):
        self.success = success
        self.gauge = gauge
        self.result = result
        self.stuck_order = stuck_order
        self.stuck_class = stuck_class

    def __repr__(self):
        if self.success:
            return f"RigidifyReport(success, order={self.gauge.order})"
        return f"RigidifyReport(stuck at order {self.stuck_order})"


def rigidify(sys, defn):
    """Trivialise order by order; report the composite gauge or where it sticks."""
    _check_normalised(sys, defn)
    report = verify_deformation(sys, defn)
    if not report.ok:
        raise ValueError("deformation equations fail")
    current = defn
    composite = identity_gauge(sys.field, sys.dim, defn.order)
    for n in range(defn.order):
        if current.coefficients_vanish(n + 1, n + 1):
            continue
        step = trivialize_step(sys, current, n)
        if step is None:
            mod = regular_bimodule(sys)
            stuck = pack_rbs_cochain(
                MultiMap(sys.alg, 2, current.mus[n + 1]),
                MultiMap(sys.alg, 1, current.Rs[n + 1]),
                MultiMap(sys.alg, 1, current.Ss[n + 1]),
            )
            return RigidifyReport(False, composite, current, n + 1, stuck)
        gauge, current = step
        composite = compose_gauges(composite, gauge)
    return RigidifyReport(True, composite, current)


class OperatorDeformation:
    """Operator coefficient families with the multiplication held fixed."""

    __slots__ = ("order", "Rs", "Ss")

    def __init__(self, order, Rs, Ss):
        if not (len(Rs) == len(Ss) == order + 1):
            raise ValueError(f"need {order + 1} coefficients per family")
        self.order = order
        self.Rs = list(Rs)
        self.Ss = list(Ss)

    def __repr__(self):
        return f"OperatorDeformation(order={self.order})"


def constant_operator_deformation(sys, order):
    zop = Matrix.zeros(sys.field, sys.dim, sys.dim)
    return OperatorDeformation(order, [sys.R] + [zop] * order, [sys.S] + [zop] * order)


def verify_operator_deformation(sys, od):
    """Per-order residuals of the operator equations with mu fixed."""
    if od.Rs[0] != sys.R or od.Ss[0] != sys.S:
        raise ValueError("operator deformation is not normalised at order 0")
    field, d = sys.field, sys.dim
    mu = sys.alg.mult_matrix()
    idd = Matrix.identity(field, d)
    residuals = []
    for n in range(od.order + 1):
        res_r = Matrix.zeros(field, d, d * d)
        res_s = Matrix.zeros(field, d, d * d)
        for i in range(n + 1):
            j = n - i
            res_r = (
                res_r
                + mu @ od.Rs[i].kron(od.Rs[j])
                - od.Rs[i] @ mu @ od.Rs[j].kron(idd)
                - od.Rs[i] @ mu @ idd.kron(od.Ss[j])
            )
            res_s = (
                res_s
                + mu @ od.Ss[i].kron(od.Ss[j])
                - od.Ss[i] @ mu @ od.Rs[j].kron(idd)
                - od.Ss[i] @ mu @ idd.kron(od.Ss[j])
            )
        residuals.append((res_r, res_s))
    return residuals


def operator_deformation_ok(residuals, through=None):
    take = residuals if through is None else residuals[: through + 1]
    return all(r.is_zero() and s.is_zero() for r, s in take)


def operator_infinitesimal(sys, od):
    """Package (R_1, S_1) as a degree-1 operator cochain and check it."""
    if od.order < 1:
        raise ValueError("need at least order 1")
    residuals = verify_operator_deformation(sys, od)
    if not operator_deformation_ok(residuals, through=1):
        raise ValueError("order-1 operator deformation equations fail")
    mod = regular_bimodule(sys)
    cochain = pack_rbso_cochain(
        MultiMap(sys.alg, 1, od.Rs[1]), MultiMap(sys.alg, 1, od.Ss[1])
    )
    cx = CochainComplex(RBSO, sys, mod)
    return cochain, cx.is_cocycle(cochain)
