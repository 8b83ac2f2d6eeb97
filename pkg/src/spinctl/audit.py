"""Numerical self-audit: every structural identity the library relies on.

Each check probes one identity with seeded random parameters (100 probes,
uniform in [-2, 2]) and reports a CheckResult. Statuses:

* PASS     - the identity holds within tolerance.
* FAIL     - it does not.
* RESOLVED - the identity only holds under one of two candidate sign/role
  assignments; the winning assignment is reported as a token and must
  agree with the value stored in closedforms.AUDITED_CONVENTIONS.

Reports are deterministic for a fixed seed, byte for byte.

Check catalog (fixed order):

    dirac_algebra            Clifford relations of (alpha, beta), exact
    kg_identity              H(t)^2 = (m^2 + |p|^2) * 1
    sphere_constraint        Tr(H^2 / 2) = m^2 + |p|^2
    eigenframe_inverse       W W^-1 = W^-1 W = 1 and W D0 W^-1 = H(t)
    isometry_su2             U(t,s) H(s) U(t,s)^dag = H(t)
    isometry_su3             same, resolving the sign of U's upper corner
    isometry_su4             same, resolving the diagonal phase sign
    frame_commutator         i dH/dt = sign * [H, D0], resolving the sign
    propagator_question      which unitary solves i dU/dt = H(t) U
    ode_transcriptions       generic projection engine vs the two
                             hand-specialized Dirac-split rate systems
    epsilon_identity         (eps.p)(eps^dag.p) = |p|^2 * 1, both orders
    q_factorization          U(t,s) = Q(t) Q(s)^dag
    constraint_orthogonality Tr(H F) preserved along closed-form and
                             integrated flows
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import brachistochrone as bt
from . import closedforms as cf
from . import oracle
from .generators import build_basis, dirac_operators, reconstruct, verify_algebra
from .matrixcore import dagger

__all__ = ["CheckResult", "catalog_ids", "format_report", "full_report", "run_check"]

_FD_STEP = 1e-6  # central finite-difference step for d/dt probes


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one audit check."""

    check_id: str
    status: str                 # PASS | FAIL | RESOLVED
    max_error: float
    detail: str
    token: Optional[str] = None  # convention token, RESOLVED only

    def line(self) -> str:
        tag = self.status if self.status != "RESOLVED" else f"RESOLVED:{self.token}"
        return f"CHECK {self.check_id} {tag} max_err={self.max_error:.3e} {self.detail}"


def _draw_params(rng: np.random.Generator, min_p: float = 0.0) -> cf.DiracParameters:
    m = rng.uniform(-2, 2)
    p = rng.uniform(-2, 2, 3)
    while np.linalg.norm(p) <= min_p:
        p = rng.uniform(-2, 2, 3)
    return cf.DiracParameters(m=m, p0=p)


def _resolve(check_id: str, candidates: dict[str, float], expected_token: str,
             tol: float, detail: str) -> CheckResult:
    """RESOLVED when exactly one candidate passes (or the best of several).

    FAILs if no candidate meets tol or the winner contradicts the stored
    convention record.
    """
    winner = min(candidates, key=lambda k: candidates[k])
    err = candidates[winner]
    rejected = "; ".join(f"{k}: {v:.3e}" for k, v in candidates.items() if k != winner)
    full_detail = f"{detail} [chosen {winner}: {err:.3e}; rejected {rejected}]"
    if err > tol:
        return CheckResult(check_id, "FAIL", err, f"no assignment passes; {full_detail}")
    if winner != expected_token:
        return CheckResult(
            check_id, "FAIL", err,
            f"resolution {winner} contradicts stored convention {expected_token}; {full_detail}",
        )
    return CheckResult(check_id, "RESOLVED", err, full_detail, token=winner)


# --------------------------------------------------------------------------
# Individual checks. Each takes (rng, tol) and returns a CheckResult.
# --------------------------------------------------------------------------

def _check_dirac_algebra(rng, tol):
    report = verify_algebra(dirac_operators())
    err = max(report.values())
    worst = max(report, key=report.get)
    return CheckResult(
        "dirac_algebra",
        "PASS" if err <= tol else "FAIL",
        err,
        f"16 Clifford relations; worst {worst}",
    )


def _check_kg_identity(rng, tol):
    err = 0.0
    eye = np.eye(4)
    for _ in range(100):
        params = _draw_params(rng)
        t = rng.uniform(-2, 2)
        h = cf.dirac_hamiltonian(params, t)
        err = max(err, float(np.max(np.abs(h @ h - params.energy ** 2 * eye))))
    return CheckResult(
        "kg_identity",
        "PASS" if err <= tol else "FAIL",
        err,
        "H(t)^2 = (m^2+|p|^2)*1 over 100 random (m, p, t)",
    )


def _check_sphere_constraint(rng, tol):
    errs = {"sphere_divisor=dim": 0.0, "sphere_divisor=2": 0.0}
    for _ in range(100):
        params = _draw_params(rng)
        t = rng.uniform(-2, 2)
        h = cf.dirac_hamiltonian(params, t)
        tr = np.trace(h @ h).real
        e2 = params.energy ** 2
        errs["sphere_divisor=dim"] = max(errs["sphere_divisor=dim"], abs(tr / 4.0 - e2))
        errs["sphere_divisor=2"] = max(errs["sphere_divisor=2"], abs(tr / 2.0 - e2))
    expected = "sphere_divisor=dim" if cf.AUDITED_CONVENTIONS.sphere_divisor_is_dim else "sphere_divisor=2"
    return _resolve(
        "sphere_constraint", errs, expected, tol,
        "energy-sphere radius Tr(H^2)/divisor = m^2 + |p|^2 over 100 probes; "
        "the fixed divisor 2 only suits 2x2 generators",
    )


def _check_eigenframe_inverse(rng, tol):
    err = 0.0
    eye = np.eye(4)
    for _ in range(100):
        params = _draw_params(rng, min_p=0.1)
        t = rng.uniform(-2, 2)
        frame = cf.su4_eigenframe(params, t)
        err = max(
            err,
            float(np.max(np.abs(frame.w @ frame.w_inv - eye))),
            float(np.max(np.abs(frame.w_inv @ frame.w - eye))),
            float(np.max(np.abs(frame.hamiltonian() - cf.dirac_hamiltonian(params, t)))),
        )
    return CheckResult(
        "eigenframe_inverse",
        "PASS" if err <= tol else "FAIL",
        err,
        "W W^-1 = W^-1 W = 1 and W D0 W^-1 = H(t), 100 probes with |p| > 0.1",
    )


def _isometry_error(family: cf.UnitaryFamily, pairs) -> float:
    err = 0.0
    for t, s in pairs:
        u = family.propagator(t, s)
        err = max(err, float(np.max(np.abs(
            u @ family.hamiltonian(s) @ dagger(u) - family.hamiltonian(t)))))
    return err


def _check_isometry_su2(rng, tol):
    fam = cf.su2_family()
    pairs = rng.uniform(-2, 2, (100, 2))
    err = _isometry_error(fam, pairs)
    return CheckResult(
        "isometry_su2",
        "PASS" if err <= tol else "FAIL",
        err,
        "U(t,s) H(s) U(t,s)^dag = H(t), 100 random (t, s)",
    )


def _check_isometry_su3(rng, tol):
    pairs = rng.uniform(-2, 2, (100, 2))
    thetas = rng.uniform(-2, 2, 100)
    errs = {"su3_u13_sign=+i": 0.0, "su3_u13_sign=-i": 0.0}
    unit_minus = 0.0
    for (t, s), theta in zip(pairs, thetas):
        fam = cf.su3_family(theta)
        h_s, h_t = fam.hamiltonian(s), fam.hamiltonian(t)
        u_plus = fam.propagator(t, s)
        u_minus = u_plus.copy()
        u_minus[0, 2] = -u_minus[0, 2]  # the competing corner sign
        errs["su3_u13_sign=+i"] = max(errs["su3_u13_sign=+i"], float(np.max(np.abs(
            u_plus @ h_s @ dagger(u_plus) - h_t))))
        errs["su3_u13_sign=-i"] = max(errs["su3_u13_sign=-i"], float(np.max(np.abs(
            u_minus @ h_s @ dagger(u_minus) - h_t))))
        unit_minus = max(unit_minus, float(np.max(np.abs(
            u_minus @ dagger(u_minus) - np.eye(3)))))
    expected = "su3_u13_sign=+i" if cf.AUDITED_CONVENTIONS.su3_upper_sign == 1 else "su3_u13_sign=-i"
    return _resolve(
        "isometry_su3", errs, expected, tol,
        f"isometry over 100 random (t, s, theta); corner sign -i also breaks unitarity ({unit_minus:.3e})",
    )


def _check_isometry_su4(rng, tol):
    errs = {"phase_sign=-1": 0.0, "phase_sign=+1": 0.0}
    for _ in range(100):
        params = _draw_params(rng, min_p=0.1)
        t, s = rng.uniform(-2, 2, 2)
        h_s, h_t = cf.dirac_hamiltonian(params, s), cf.dirac_hamiltonian(params, t)
        for sign, key in ((-1, "phase_sign=-1"), (1, "phase_sign=+1")):
            u = cf.su4_propagator(params, t, s, phase_sign=sign)
            errs[key] = max(errs[key], float(np.max(np.abs(u @ h_s @ dagger(u) - h_t))))
    expected = "phase_sign=-1" if cf.AUDITED_CONVENTIONS.su4_phase_sign == -1 else "phase_sign=+1"
    return _resolve(
        "isometry_su4", errs, expected, tol,
        "diagonal-phase sign resolved by the isometry, 100 probes",
    )


def _check_frame_commutator(rng, tol):
    errs = {"didt_sign=-1": 0.0, "didt_sign=+1": 0.0}
    for _ in range(100):
        params = _draw_params(rng)
        t = rng.uniform(-2, 2)
        hdot = (cf.dirac_hamiltonian(params, t + _FD_STEP)
                - cf.dirac_hamiltonian(params, t - _FD_STEP)) / (2 * _FD_STEP)
        lhs = 1j * hdot
        h = cf.dirac_hamiltonian(params, t)
        d0 = params.energy * np.diag([1.0, 1.0, -1.0, -1.0])
        comm = h @ d0 - d0 @ h
        errs["didt_sign=+1"] = max(errs["didt_sign=+1"], float(np.max(np.abs(lhs - comm))))
        errs["didt_sign=-1"] = max(errs["didt_sign=-1"], float(np.max(np.abs(lhs + comm))))
    expected = "didt_sign=-1" if cf.AUDITED_CONVENTIONS.didt_commutator_sign == -1 else "didt_sign=+1"
    return _resolve(
        "frame_commutator", errs, expected, tol,
        "i dH/dt vs [H, D0] by central differences, 100 probes",
    )


def _check_propagator_question(rng, tol):
    families = {
        "su2": cf.su2_family(),
        "su3": cf.su3_family(rng.uniform(-2, 2)),
        "su4": cf.su4_family(_draw_params(rng, min_p=0.1)),
    }
    parts = []
    v_err = 0.0
    for name, fam in families.items():
        t, s = rng.uniform(0.2, 2), rng.uniform(-2, 0.1)

        def ode_residual(prop):
            du = (prop(t + _FD_STEP, s) - prop(t - _FD_STEP, s)) / (2 * _FD_STEP)
            return float(np.max(np.abs(1j * du - fam.hamiltonian(t) @ prop(t, s))))

        r_closed = ode_residual(fam.propagator)
        r_rot = ode_residual(lambda a, b: oracle.schrodinger_propagator(fam, a, b))
        # referee: step product against the rotating-frame form
        u_ref = oracle.time_ordered_exponential(oracle.schedule_for(fam), s, t, 2000)
        r_oracle = float(np.max(np.abs(u_ref - oracle.schrodinger_propagator(fam, t, s))))
        v_err = max(v_err, r_rot, r_oracle)
        verdict = "not a propagator" if r_closed > tol else "also a propagator"
        parts.append(f"{name}: conjugator residual {r_closed:.3e} ({verdict}), "
                     f"rotating-frame residual {r_rot:.3e}, referee gap {r_oracle:.3e}")
    expected = f"schrodinger={cf.AUDITED_CONVENTIONS.schrodinger_propagator}"
    if v_err > tol:
        return CheckResult("propagator_question", "FAIL", v_err,
                           "rotating-frame propagator fails its own ODE; " + "; ".join(parts))
    return CheckResult("propagator_question", "RESOLVED", v_err,
                       "; ".join(parts), token=expected)


def _check_ode_transcriptions(rng, tol):
    split = bt.canonical_split("su4")
    factor_num = factor_den = 0.0
    res_a = res_b_scaled = res_b_raw = 0.0
    res_vec_m = res_vec_p = res_vec_o0 = 0.0
    states, generics = [], []
    for _ in range(100):
        s = bt.DiracSplitState(
            m=rng.uniform(-2, 2), p=rng.uniform(-2, 2, 3),
            omega0=rng.uniform(-2, 2, 3), omega2=rng.uniform(-2, 2, 3),
            omega3=rng.uniform(-2, 2, 3),
            omega10=rng.uniform(-2, 2), omega20=rng.uniform(-2, 2),
        )
        deriv = bt.brachistochrone_rhs(bt.dirac_state_to_pair(s), split)
        g = bt.pair_to_dirac_state(deriv)
        states.append(s)
        generics.append(g)
        d = bt.dirac_split_rhs(s)
        # group A: components where the component form is a faithful projection
        ga = np.concatenate([[g.m], g.p, g.omega0, g.omega2, [g.omega20]])
        da = np.concatenate([[d.m], d.p, d.omega0, d.omega2, [d.omega20]])
        factor_num += float(ga @ da)
        factor_den += float(da @ da)
    factor = factor_num / factor_den
    for s, g in zip(states, generics):
        d = bt.dirac_split_rhs(s)
        v = bt.dirac_vector_rhs(s)
        ga = np.concatenate([[g.m], g.p, g.omega0, g.omega2, [g.omega20]])
        da = np.concatenate([[d.m], d.p, d.omega0, d.omega2, [d.omega20]])
        res_a = max(res_a, float(np.max(np.abs(ga - factor * da))))
        gb = np.concatenate([[g.omega10], g.omega3])
        db = np.concatenate([[d.omega10], d.omega3])
        res_b_raw = max(res_b_raw, float(np.max(np.abs(gb - factor * db))))
        res_b_scaled = max(res_b_scaled, float(np.max(np.abs(gb - factor * db * s.omega20))))
        res_vec_m = max(res_vec_m, abs(g.m - v.m))
        res_vec_p = max(res_vec_p, float(np.max(np.abs(g.p - v.p))))
        res_vec_o0 = max(res_vec_o0, float(np.max(np.abs(g.omega0 - v.omega0))))
    expected = f"ode_factor={cf.AUDITED_CONVENTIONS.dirac_ode_factor:+g}"
    token = f"ode_factor={round(factor) if abs(factor - round(factor)) <= tol else factor:+g}"
    err = max(res_a, res_b_scaled)
    detail = (
        f"fitted factor {factor:+.12g}; mass/momentum/omega20 rates match generic to {res_a:.3e}; "
        f"(omega10, omega3) rates match only after an extra omega20 factor ({res_b_scaled:.3e} scaled "
        f"vs {res_b_raw:.3e} raw, a norm-conservation defect of the component form); "
        f"vector-matrix form gaps: dm/dt {res_vec_m:.3e} (b.p lacks the factor 2), "
        f"dp/dt {res_vec_p:.3e} (mass term couples n+ + n- instead of 2b; curl term agrees), "
        f"domega0/dt {res_vec_o0:.3e} (4p split across the wrong n combination)"
    )
    if err > tol or token != expected:
        return CheckResult("ode_transcriptions", "FAIL", err, detail)
    return CheckResult("ode_transcriptions", "RESOLVED", err, detail, token=token)


def _check_epsilon_identity(rng, tol):
    err = 0.0
    eye = np.eye(2)
    for _ in range(100):
        p = rng.uniform(-2, 2, 3)
        left, right = cf.epsilon_product(p)
        target = float(p @ p) * eye
        err = max(err, float(np.max(np.abs(left - target))),
                  float(np.max(np.abs(right - target))))
    return CheckResult(
        "epsilon_identity",
        "PASS" if err <= tol else "FAIL",
        err,
        "(eps.p)(eps^dag.p) = (eps^dag.p)(eps.p) = |p|^2 * 1, 100 probes",
    )


def _check_q_factorization(rng, tol):
    err = 0.0
    for _ in range(100):
        theta = rng.uniform(-2, 2)
        t, s = rng.uniform(-2, 2, 2)
        fam = cf.su3_family(theta)
        err = max(err, float(np.max(np.abs(
            fam.gate(t) @ dagger(fam.gate(s)) - fam.propagator(t, s)))))
    return CheckResult(
        "q_factorization",
        "PASS" if err <= tol else "FAIL",
        err,
        "U(t,s) = Q(t) Q(s)^dag over 100 random (t, s, theta)",
    )


def _check_constraint_orthogonality(rng, tol):
    # closed-form: simultaneous conjugation preserves Tr(H F); and a
    # constraint built orthogonal to H(0) stays orthogonal to H(t).
    err_closed = 0.0
    basis = build_basis("su4")
    for _ in range(20):
        params = _draw_params(rng, min_p=0.1)
        f0 = rng.uniform(-2, 2, 15)
        h0 = cf.dirac_hamiltonian(params, 0.0)
        f0_mat = reconstruct(f0, basis)
        overlap = np.trace(h0 @ f0_mat).real
        # remove the H(0) component so Tr(H(0) F(0)) = 0
        h0_coeffs = np.einsum("kij,ji->k", basis.elements, h0).real / basis.norm_constants
        f0 = f0 - overlap * h0_coeffs / np.trace(h0 @ h0).real
        for t in rng.uniform(-2, 2, 5):
            ft = cf.su4_constraint_t(f0, params, t)
            ht = cf.dirac_hamiltonian(params, t)
            err_closed = max(err_closed, abs(np.trace(ht @ ft).real))
    # integrated flows: the monitor channel Tr(HF) along short random runs
    err_flow = 0.0
    for group in ("su2", "su3", "su4"):
        split = bt.canonical_split(group)
        h0 = rng.uniform(-1, 1, len(split.s_indices))
        f0 = rng.uniform(-1, 1, len(split.c_indices))
        traj = bt.integrate(bt.OperatorPair(h0, f0), split, h=1e-3, T=1.0, sample_stride=100)
        err_flow = max(err_flow, float(np.max(np.abs(traj.monitors[:, 2]))))
    err = max(err_closed, err_flow)
    return CheckResult(
        "constraint_orthogonality",
        "PASS" if err <= tol else "FAIL",
        err,
        f"Tr(H F) = 0 transported by conjugation ({err_closed:.3e}) and along integrated flows ({err_flow:.3e})",
    )


_CATALOG: tuple[tuple[str, Callable, float], ...] = (
    ("dirac_algebra", _check_dirac_algebra, 0.0),
    ("kg_identity", _check_kg_identity, 1e-12),
    ("sphere_constraint", _check_sphere_constraint, 1e-12),
    ("eigenframe_inverse", _check_eigenframe_inverse, 1e-10),
    ("isometry_su2", _check_isometry_su2, 1e-10),
    ("isometry_su3", _check_isometry_su3, 1e-10),
    ("isometry_su4", _check_isometry_su4, 1e-10),
    ("frame_commutator", _check_frame_commutator, 2e-6),
    ("propagator_question", _check_propagator_question, 1e-4),
    ("ode_transcriptions", _check_ode_transcriptions, 1e-10),
    ("epsilon_identity", _check_epsilon_identity, 1e-13),
    ("q_factorization", _check_q_factorization, 1e-10),
    ("constraint_orthogonality", _check_constraint_orthogonality, 1e-9),
)


def catalog_ids() -> tuple[str, ...]:
    """All check ids in report order."""
    return tuple(cid for cid, _, _ in _CATALOG)


def run_check(check_id: str, tol: Optional[float] = None, seed: int = 0) -> CheckResult:
    """Run one catalog check.

    ``tol`` overrides the check's default tolerance; the randomized probes
    are drawn from a generator keyed on (seed, catalog position), so a
    single check reproduces exactly what full_report produces for it.
    """
    for idx, (cid, fn, default_tol) in enumerate(_CATALOG):
        if cid == check_id:
            rng = np.random.default_rng([seed, idx])
            return fn(rng, default_tol if tol is None else tol)
    raise KeyError(f"unknown check id {check_id!r}")


def full_report(tol: Optional[float] = None, seed: int = 0) -> list[CheckResult]:
    """Run the entire catalog in order; failures are results, not errors."""
    return [run_check(cid, tol=tol, seed=seed) for cid, _, _ in _CATALOG]


def format_report(results: list[CheckResult]) -> str:
    """One line per check, newline-terminated."""
    return "".join(r.line() + "\n" for r in results)
