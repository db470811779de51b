"""Bimodules over Rota-Baxter systems and the constructions built on them.

Alongside the axioms this module provides the regular bimodule, the
semidirect product A (+) M (in both directions of the characterisation),
and the doubled module D(M) = M (+) M over the star algebra with the
twisted actions

    a |> (m1, m2) = (R(a)m1 - R_M(a m2), S(a)m2 - S_M(a m2))
    (m1, m2) <| a = (m1 R(a) - R_M(m1 a), m2 S(a) - S_M(m1 a))

D(M) is materialised as explicit action tensors on a 2m-dimensional space
so the generic Hochschild machinery can consume it unchanged.
"""

from __future__ import annotations

import numpy as np

from .algebra import BimoduleActions, Verdict, check_bimodule, regular_actions
from .linalg import Matrix, block_diag
from .systems import RotaBaxterSystem, _star_algebra_unchecked, check_rbs


class RBSBimodule:
    """An A-bimodule with operators (R_M, S_M) over a system (A, R, S)."""

    __slots__ = ("base", "actions", "RM", "SM")

    def __init__(self, base, actions, RM, SM):
        m = actions.dim
        if actions.adim != base.dim:
            raise ValueError("actions do not match the algebra dimension")
        for name, op in (("RM", RM), ("SM", SM)):
            if op.shape != (m, m):
                raise ValueError(f"{name} has shape {op.shape}, expected ({m}, {m})")
        self.base = base
        self.actions = actions
        self.RM = RM
        self.SM = SM

    @property
    def dim(self):
        return self.actions.dim

    @property
    def field(self):
        return self.base.field

    def __eq__(self, other):
        return (
            isinstance(other, RBSBimodule)
            and self.base == other.base
            and self.actions == other.actions
            and self.RM == other.RM
            and self.SM == other.SM
        )

    def __repr__(self):
        return f"RBSBimodule(dim={self.dim} over {self.base!r})"


def regular_bimodule(sys):
    """The system acting on itself: M = A, R_M = R, S_M = S."""
    verdict = check_rbs(sys)
    if not verdict:
        raise ValueError(f"not a Rota-Baxter system: {verdict.describe()}")
    return RBSBimodule(sys, regular_actions(sys.alg), sys.R, sys.S)


def check_rbs_bimodule(mod):
    """A-bimodule axioms plus the four operator equations on basis pairs."""
    sys = mod.base
    verdict = check_rbs(sys)
    if not verdict:
        raise ValueError(f"base is not a Rota-Baxter system: {verdict.describe()}")
    base_axioms = check_bimodule(sys.alg, mod.actions)
    if not base_axioms:
        return base_axioms
    field, d, m = mod.field, sys.dim, mod.dim
    lam = mod.actions.left_matrix()
    rho = mod.actions.right_matrix()
    idd = Matrix.identity(field, d)
    idm = Matrix.identity(field, m)
    R, S, RM, SM = sys.R, sys.S, mod.RM, mod.SM
    # inner maps (a, m) -> R(a)m + a S_M(m) and (m, a) -> R_M(m)a + m S(a)
    inner_am = lam @ R.kron(idm) + lam @ idd.kron(SM)
    inner_ma = rho @ RM.kron(idd) + rho @ idm.kron(S)
    checks = [
        ("eq1", lam @ R.kron(RM), RM @ inner_am, (d, m)),
        ("eq2", rho @ RM.kron(R), RM @ inner_ma, (m, d)),
        ("eq3", lam @ S.kron(SM), SM @ inner_am, (d, m)),
        ("eq4", rho @ SM.kron(S), SM @ inner_ma, (m, d)),
    ]
    for tag, lhs, rhs, dims in checks:
        if lhs != rhs:
            diff = lhs - rhs
            for col in range(diff.cols):
                if not diff.col(col).is_zero():
                    i, j = divmod(col, dims[1])
                    return Verdict(
                        False, tag=tag, witness=(i, j),
                        lhs=lhs.col(col).entries(), rhs=rhs.col(col).entries(),
                    )
    return Verdict(True)


def semidirect_maps(field, d, m):
    """Canonical inclusion A -> A (+) M and projection A (+) M -> A."""
    iota = Matrix(field, np.vstack([
        np.eye(d, dtype=field.dtype),
        np.zeros((m, d), dtype=field.dtype),
    ]))
    pi = Matrix(field, np.hstack([
        np.eye(d, dtype=field.dtype),
        np.zeros((d, m), dtype=field.dtype),
    ]))
    return iota, pi


def semidirect_product(mod):
    """The system on A (+) M with (a, m)(b, n) = (ab, an + mb).

    Operators act componentwise; the result is verified, and the canonical
    inclusion and projection are morphisms by construction.
    """
    verdict = check_rbs_bimodule(mod)
    if not verdict:
        raise ValueError(f"not a Rota-Baxter system bimodule: {verdict.describe()}")
    sys = mod.base
    field, d, m = mod.field, sys.dim, mod.dim
    n = d + m
    mult = np.zeros((n, n, n), dtype=field.dtype)
    mult[:d, :d, :d] = sys.alg.mult
    mult[:d, d:, d:] = mod.actions.left
    mult[d:, :d, d:] = mod.actions.right
    from .algebra import Algebra

    alg = Algebra(field, n, mult)
    out = RotaBaxterSystem(alg, block_diag([sys.R, mod.RM]), block_diag([sys.S, mod.SM]))
    check = check_rbs(out)
    if not check:
        raise AssertionError(f"semidirect product failed the axioms: {check.describe()}")
    return out


def semidirect_extract(sys, actions, Rp, Sp):
    """Recover (R_M, S_M) from operators on A (+) M compatible with the legs.

    Rp, Sp must fix the A-summand through the projection and restrict to the
    M-summand (the commuting conditions with inclusion and projection); the
    lower-right blocks then define a system bimodule, which is verified.
    """
    d, m = sys.dim, actions.dim
    for name, op, base_op in (("Rp", Rp, sys.R), ("Sp", Sp, sys.S)):
        if op.shape != (d + m, d + m):
            raise ValueError(f"{name} has shape {op.shape}, expected {(d + m, d + m)}")
        if op.take_rows(0, d).take_cols(0, d) != base_op:
            raise ValueError(f"{name} does not restrict to the base operator on A")
        if not op.take_rows(d, d + m).take_cols(0, d).is_zero():
            raise ValueError(f"{name} does not send the A-summand into itself")
        if not op.take_rows(0, d).take_cols(d, d + m).is_zero():
            raise ValueError(f"{name} does not preserve the M-summand")
    RM = Rp.take_rows(d, d + m).take_cols(d, d + m)
    SM = Sp.take_rows(d, d + m).take_cols(d, d + m)
    mod = RBSBimodule(sys, actions, RM, SM)
    verdict = check_rbs_bimodule(mod)
    if not verdict:
        raise ValueError(f"extracted operators fail the bimodule axioms: {verdict.describe()}")
    return mod


class DModule:
    """The star algebra together with the twisted actions on M (+) M."""

    __slots__ = ("star", "actions")

    def __init__(self, star, actions):
        self.star = star
        self.actions = actions

    def __repr__(self):
        return f"DModule(dim={self.actions.dim} over {self.star!r})"


def d_module(mod):
    """Build the doubled bimodule over the star algebra and verify its axioms."""
    verdict = check_rbs_bimodule(mod)
    if not verdict:
        raise ValueError(f"not a Rota-Baxter system bimodule: {verdict.describe()}")
    dm = _d_module_unchecked(mod)
    axioms = check_bimodule(dm.star, dm.actions)
    if not axioms:
        raise AssertionError(f"doubled module failed the axioms: {axioms.describe()}")
    return dm


def _d_module_unchecked(mod):
    sys = mod.base
    field, d, m = mod.field, sys.dim, mod.dim
    l, r = mod.actions.left, mod.actions.right
    R, S, RM, SM = sys.R.a, sys.S.a, mod.RM.a, mod.SM.a

    left = np.zeros((d, 2 * m, 2 * m), dtype=field.dtype)
    right = np.zeros((2 * m, d, 2 * m), dtype=field.dtype)
    for i in range(d):
        for u in range(m):
            for v in range(m):
                # e_i |> (f_u, 0) = (R(e_i) f_u, 0)
                left[i, u, v] = sum(R[k, i] * l[k, u, v] for k in range(d))
                # e_i |> (0, f_u) = (-R_M(e_i f_u), S(e_i) f_u - S_M(e_i f_u))
                left[i, m + u, v] = -sum(l[i, u, w] * RM[v, w] for w in range(m))
                left[i, m + u, m + v] = sum(S[k, i] * l[k, u, v] for k in range(d)) - sum(
                    l[i, u, w] * SM[v, w] for w in range(m)
                )
                # (f_u, 0) <| e_i = (f_u R(e_i) - R_M(f_u e_i), -S_M(f_u e_i))
                right[u, i, v] = sum(R[k, i] * r[u, k, v] for k in range(d)) - sum(
                    r[u, i, w] * RM[v, w] for w in range(m)
                )
                right[u, i, m + v] = -sum(r[u, i, w] * SM[v, w] for w in range(m))
                # (0, f_u) <| e_i = (0, f_u S(e_i))
                right[m + u, i, m + v] = sum(S[k, i] * r[u, k, v] for k in range(d))
    star = _star_algebra_unchecked(sys)
    return DModule(star, BimoduleActions(field, d, 2 * m, left, right))


def d_module_rbs(mod):
    """The doubled module as a bimodule over (A_*, R, S); None unless RS = SR.

    The operators act as R_M (+) R_M and S_M (+) S_M.  The construction is
    verified rather than assumed; a failing instance is raised with its
    witness.
    """
    sys = mod.base
    if sys.R @ sys.S != sys.S @ sys.R:
        return None
    from .systems import star_rbs_if_commuting

    star_sys = star_rbs_if_commuting(sys)
    dm = d_module(mod)
    out = RBSBimodule(
        star_sys,
        dm.actions,
        block_diag([mod.RM, mod.RM]),
        block_diag([mod.SM, mod.SM]),
    )
    verdict = check_rbs_bimodule(out)
    if not verdict:
        raise AssertionError(
            f"doubled module over the star system failed the axioms: {verdict.describe()}"
        )
    return out


def conjugate_bimodule(mod, P, Q):
    """Transport a bimodule along base changes P (on A) and Q (on M)."""
    from .systems import conjugate_system

    Pinv, Qinv = P.inverse(), Q.inverse()
    if Pinv is None or Qinv is None:
        raise ValueError("base change matrix is singular")
    sys2 = conjugate_system(mod.base, P)
    field, d, m = mod.field, mod.base.dim, mod.dim
    lam = Qinv @ mod.actions.left_matrix() @ P.kron(Q)
    rho = Qinv @ mod.actions.right_matrix() @ Q.kron(P)
    left = lam.a.reshape(m, d, m).transpose(1, 2, 0)
    right = rho.a.reshape(m, m, d).transpose(1, 2, 0)
    actions = BimoduleActions(field, d, m, left, right)
    return RBSBimodule(sys2, actions, Qinv @ mod.RM @ Q, Qinv @ mod.SM @ Q)
