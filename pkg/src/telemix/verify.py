"""Cross-pipeline invariant suite behind ``telemix verify``.

Each check compares two independent routes (constructed matrix through
:mod:`telemix.metrics` versus :mod:`telemix.closedform`, Jacobi versus
LAPACK, simulator versus closed form, brute-force oracle versus spectral
formula) and records the measured worst residual against a threshold.

``quick`` uses coarse grids and skips Monte Carlo and oracles; ``full``
uses 500-point family grids and adds the seeded Monte-Carlo, sampling and
hill-climbing oracles. Records are informational lines that never fail.
"""
import math
from dataclasses import dataclass, field
from typing import List

import numpy as np
from scipy.optimize import bisect

from . import closedform as cf
from . import constants as K
from . import metrics, numerics, states as st, tables, telesim
from .oracles import chsh_max_oracle, fef_sampling_oracle

CROSS_TOL = 1e-9
BOUNDARY_GAP = 1e-9
FIELDS = ("s_lin", "concurrence", "fef", "n_value", "m_value", "f_opt")


@dataclass
class Check:
    name: str
    residual: float
    threshold: float
    summary: str
    passed: bool


@dataclass
class VerifyReport:
    level: str
    checks: List[Check] = field(default_factory=list)
    records: List[str] = field(default_factory=list)

    @property
    def ok(self):
        return all(c.passed for c in self.checks)

    def add(self, name, residual, threshold, summary=None, passed=None):
        residual = float(residual)
        if passed is None:
            passed = residual <= threshold
        if summary is None:
            summary = f"max residual <= {threshold:.0e}"
        self.checks.append(Check(name, residual, threshold, summary, bool(passed)))

    def render(self):
        lines = [f"telemix verify --level {self.level}"]
        for c in self.checks:
            lines.append(f"{'PASS' if c.passed else 'FAIL'}  {c.name}: {c.summary} "
                         f"(measured {c.residual:.3e})")
        for r in self.records:
            lines.append(f"INFO  {r}")
        failed = [c.name for c in self.checks if not c.passed]
        lines.append(f"{len(self.checks)} checks, {len(failed)} failed"
                     + (": " + ", ".join(failed) if failed else ""))
        return "\n".join(lines) + "\n"


# -- shared test material ----------------------------------------------------

def random_density(rng, rank=4):
    """Mixture of ``rank`` random pure states with Dirichlet weights."""
    z = rng.normal(size=(rank, 4)) + 1j * rng.normal(size=(rank, 4))
    z /= np.linalg.norm(z, axis=1, keepdims=True)
    w = rng.dirichlet(np.ones(rank))
    rho = np.einsum("k,ki,kj->ij", w, z, z.conj())
    return 0.5 * (rho + rho.conj().T)


def reference_states(n=20, seed=0):
    """Fixed list of ``n`` test channels: named landmarks, then random mixtures."""
    named = [
        st.make_state(st.Werner(1.0)),
        np.eye(4, dtype=complex) / 4.0,
        st.make_state(st.Werner(0.9)),
        st.make_state(st.Werner(0.6)),
        st.make_state(st.Mems(0.5)),
        st.make_state(st.Mems(0.8)),
        st.make_state(st.WernerDerivative(0.9, 0.8)),
        st.make_state(st.WernerDerivative(0.7, 0.6)),
        st.make_state(st.NmemsNew(0.2)),
        st.make_state(st.NmemsNew(0.8)),
    ]
    rng = np.random.default_rng(seed)
    out = [np.asarray(m, dtype=complex) for m in named[:n]]
    while len(out) < n:
        out.append(random_density(rng, rank=int(rng.integers(1, 5))))
    return out


def family_grid(family, n):
    """About ``n`` family specs spread over each family's full domain."""
    if family == "werner":
        return [st.Werner(x) for x in np.linspace(0.0, 1.0, n)]
    if family == "mems":
        return [st.Mems(x) for x in np.linspace(0.0, 1.0, n)]
    if family == "new":
        return [st.NmemsNew(x) for x in np.linspace(0.0, 1.0, n)]
    k = max(2, int(round(math.sqrt(n))))
    fws = np.linspace(0.5, 1.0, k + 1)[1:]
    return [st.WernerDerivative(fw, a) for fw in fws for a in np.linspace(0.5, 1.0, k)]


def _definitional(spec):
    return metrics.analyze(st.make_state(spec))


# -- suites ------------------------------------------------------------------

def _numerics_checks(rep, rng, trials):
    for backend in sorted(numerics.KERNELS):
        worst = 0.0
        recon = 0.0
        for _ in range(trials):
            for n in numerics.ALLOWED_DIMS:
                a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
                h = a + a.conj().T
                w, v = numerics.herm_eigen(h, backend=backend)
                worst = max(worst, np.max(np.abs(w - np.linalg.eigvalsh(h))) / np.linalg.norm(h))
                recon = max(recon, np.max(np.abs((v * w) @ v.conj().T - h)) / np.linalg.norm(h))
        rep.add(f"jacobi_{backend}_vs_lapack", worst, 1e-12, "relative eigenvalue error <= 1e-12")
        rep.add(f"jacobi_{backend}_reconstruction", recon, 1e-12, "relative ||V W V^+ - H|| <= 1e-12")
    worst = 0.0
    for _ in range(trials):
        rho = random_density(rng, 4)
        r = numerics.psd_sqrt(rho)
        worst = max(worst, np.max(np.abs(r @ r - rho)))
    rep.add("psd_sqrt_square", worst, 1e-12)


def _state_checks(rep, n):
    worst = 0.0
    for fam in ("werner", "mems", "wd", "new"):
        for spec in family_grid(fam, n):
            m = np.asarray(st.make_state(spec))
            worst = max(worst, abs(np.trace(m) - 1.0), numerics.hermitian_residual(m),
                        max(0.0, -np.linalg.eigvalsh(m)[0]))
    rep.add("family_states_physical", worst, 1e-12, "trace, Hermiticity, positivity <= 1e-12")

    ghz = np.asarray(st.ghz3())
    w = np.asarray(st.w3())
    worst = 0.0
    for p in np.linspace(0.0, 1.0, n):
        traced = st.partial_trace_third(st.mix(p, ghz, w))
        worst = max(worst, np.max(np.abs(np.asarray(traced) - np.asarray(st.make_state(st.NmemsNew(p))))))
    rep.add("new_state_equals_traced_mixture", worst, 1e-12)


def _cross_pipeline_checks(rep, n):
    for fam in ("werner", "mems", "wd", "new"):
        specs = family_grid(fam, n)
        worst = dict.fromkeys(FIELDS, 0.0)
        mismatches = 0
        for spec in specs:
            d = _definitional(spec)
            c = cf.closed_form(spec)
            for f in FIELDS:
                worst[f] = max(worst[f], abs(getattr(d, f) - getattr(c, f)))
            if abs(d.n_value - 1.0) > BOUNDARY_GAP and d.useful != c.useful:
                mismatches += 1
            if abs(d.m_value - 1.0) > BOUNDARY_GAP and d.chsh_violated != c.chsh_violated:
                mismatches += 1
        for f in FIELDS:
            rep.add(f"{fam}_{f}_cross", worst[f], CROSS_TOL,
                    f"definitional vs closed form on {len(specs)} points <= 1e-9")
        rep.add(f"{fam}_verdicts_cross", mismatches, 0,
                f"useful/CHSH verdict mismatches away from N=1, M=1 on {len(specs)} points")


def _fef_identity_checks(rep, n):
    worst_w = max(abs(_definitional(st.Werner(f)).fef - f) for f in np.linspace(0.25, 1.0, n))
    rep.add("werner_fef_equals_fw", worst_w, 1e-12, "magic-basis FEF = F_w on [1/4, 1] <= 1e-12")
    worst_m = max(abs(_definitional(st.Mems(c)).fef - (st.mems_h(c) + c / 2.0))
                  for c in np.linspace(0.0, 1.0, n))
    rep.add("mems_fef_equals_h_plus_c_half", worst_m, 1e-12, "magic-basis FEF = h(C)+C/2 <= 1e-12")


def _concurrence_checks(rep, rng, n):
    worst_neg = 0.0
    for _ in range(n):
        lam2 = np.linalg.eigvals(_wootters_product(random_density(rng, int(rng.integers(4, 9)))))
        worst_neg = max(worst_neg, float(np.max(np.abs(lam2.imag))), max(0.0, -float(lam2.real.min())))
    rep.add("wootters_spectrum_real_nonnegative", worst_neg, 1e-10,
            f"|Im|, -Re of sqrt(rho) rho~ sqrt(rho) spectrum on {n} random states <= 1e-10")

    def signed(p):
        lam = metrics.wootters_lambdas(st.make_state(st.NmemsNew(p)))
        return lam[0] - lam[1:].sum()

    root = bisect(signed, 0.0, 0.5, xtol=1e-14, rtol=4 * np.finfo(float).eps)
    rep.add("new_entanglement_root", abs(root - K.NEW_ENTANGLED_P), 1e-10,
            "bisection root of C(p) = 7 - 3 sqrt(5) within 1e-10")


def _wootters_product(rho):
    r = numerics.psd_sqrt(rho)
    return r @ metrics.spin_flip(rho) @ r


def _boundary_checks(rep, n_new):
    m = _definitional(st.Werner(K.WERNER_CHSH_FW)).m_value
    rep.add("werner_chsh_boundary", abs(m - 1.0), 1e-12, "|M - 1| at F_w = (3+sqrt2)/(4 sqrt2) <= 1e-12")
    m = _definitional(st.WernerDerivative(K.WERNER_CHSH_FW, 0.5)).m_value
    rep.add("wd_case3_boundary", abs(m - 1.0), 1e-12, "|M - 1| for wd at the same F_w, a = 1/2 <= 1e-12")
    ms = np.array([_definitional(st.NmemsNew(p)).m_value for p in np.linspace(0.0, 1.0, n_new)])
    excess = max(0.0, float(ms.max() - 1.0))
    tight = int(np.sum(np.abs(ms[:-1] - 1.0) <= 1e-12))
    rep.add("new_state_m_at_most_one", excess + tight, 1e-12,
            f"M <= 1 on {n_new} points, equality only at p = 1 (M(1) - 1 = {ms[-1] - 1.0:.1e})",
            passed=excess <= 1e-12 and tight == 0 and abs(ms[-1] - 1.0) <= 1e-12)


def _fig1_checks(rep):
    f = cf.fidelity_vs_entropy
    resid = max(abs(f("werner", 0.0) - 1.0), abs(f("mems", 0.0) - 1.0),
                abs(f("mems", K.MEMS_BRANCH_SLIN) - 7.0 / 9.0),
                abs(f("mems", K.MEMS_USEFUL_SLIN) - 2.0 / 3.0),
                abs(f("werner", K.WERNER_SLIN_MAX) - 2.0 / 3.0))
    rep.add("fig1_checkpoints", resid, 1e-12, "f(0), f_MEMS(16/27), f_MEMS(22/27), f_W(8/9) <= 1e-12")
    grid = np.linspace(0.0, K.WERNER_SLIN_MAX, 1000)
    gap = np.array([f("werner", s) - f("mems", s) for s in grid])
    ok = gap[0] == 0.0 and bool(np.all(gap[1:] > 0.0))
    rep.add("fig1_werner_dominates_mems", float(min(gap[1:].min(), 0.0)), 0.0,
            f"f_W > f_MEMS on 999 grid points, equal at S_L = 0 (min gap {gap[1:].min():.2e})", passed=ok)


def _telesim_quick(rep):
    rng = np.random.default_rng(7)
    singlet = st.make_state(st.Werner(1.0))
    resid = 0.0
    for psi in telesim.haar_qubits(8, rng):
        out = telesim.teleport(singlet, psi)
        resid = max(resid, abs(out.fidelity - 1.0), float(np.max(np.abs(out.probabilities - 0.25))))
    rep.add("singlet_teleports_perfectly", resid, 1e-12)
    resid = abs(telesim.average_fidelity_2design(np.eye(4) / 4.0) - 0.5)
    rep.add("maximally_mixed_channel_half", resid, 1e-12)


def _werner_saturation(rep, n):
    fws = np.linspace(0.5, 1.0, n + 1)[1:]
    resid = max(abs(telesim.average_fidelity_2design(st.make_state(st.Werner(f))) - (2 * f + 1) / 3)
                for f in fws)
    rep.add("werner_2design_saturation", resid, 1e-12, "max residual < 1e-12",
            passed=resid < 1e-12)


def _standard_below_optimal(rep, channels):
    excess = max(telesim.average_fidelity_2design(rho) - metrics.analyze(rho).f_opt for rho in channels)
    rep.add("standard_protocol_below_optimal", max(0.0, excess), 1e-9,
            f"six-state fidelity <= f_opt + 1e-9 on {len(channels)} channels")


def _monte_carlo(rep, channels, samples, seed):
    worst = 0.0
    for rho in channels:
        exact = telesim.average_fidelity_2design(rho)
        for s in range(3):
            worst = max(worst, abs(telesim.haar_average_fidelity(rho, samples, seed + s) - exact))
    rep.add("haar_mc_matches_2design", worst, 3e-3,
            f"n = {samples}, 3 seeds, {len(channels)} channels within 3e-3")


def _oracle_checks(rep, channels, samples, seed):
    lo = 0.0
    hi = 0.0
    for i, rho in enumerate(channels):
        fef = metrics.fully_entangled_fraction(rho)
        got = fef_sampling_oracle(rho, samples, seed + i)
        lo = max(lo, fef - got)
        hi = max(hi, got - fef)
    rep.add("fef_sampling_oracle", max(lo - 2e-3, hi - 1e-9, 0.0), 0.0,
            f"sampled FEF in [FEF - 2e-3, FEF + 1e-9] on {len(channels)} states "
            f"(worst shortfall {lo:.2e}, worst excess {hi:.1e})", passed=lo <= 2e-3 and hi <= 1e-9)
    worst_gap = 0.0
    worst_excess = 0.0
    for rho in channels:
        target = 2.0 * math.sqrt(metrics.m_value(rho))
        got = chsh_max_oracle(rho)
        worst_gap = max(worst_gap, target - got)
        worst_excess = max(worst_excess, got - target)
    rep.add("chsh_hill_climb_oracle", max(worst_gap, 0.0), 1e-3,
            f"hill-climbed CHSH reaches 2 sqrt(M) within 1e-3 on {len(channels)} states "
            f"(worst excess {worst_excess:.1e})", passed=worst_gap <= 1e-3 and worst_excess <= 1e-9)


def mems_discrepancy(n=101):
    """Compare the printed and the directly evaluated MEMS correlation matrices.

    Returns ``(printed_residual, definitional_residual)``: the worst gap between
    the MEMS fidelity formula and ``(1 + N/3)/2`` with N from the printed
    T-matrix, and from the constructed state, over ``n`` values of C.
    """
    printed = 0.0
    definitional = 0.0
    for c in np.linspace(0.0, 1.0, n):
        target = cf.mems_fopt_raw(c)
        printed = max(printed, abs(cf.mems_paper_variant(c)["f_opt_raw"] - target))
        definitional = max(definitional, abs(_definitional(st.Mems(c)).f_opt_raw - target))
    return printed, definitional


def _discrepancy_records(rep):
    printed, definitional = mems_discrepancy()
    rep.add("mems_tmatrix_discrepancy", definitional, 1e-12,
            f"printed T gives fidelity off by up to {printed:.3e}; definitional T reproduces "
            f"the MEMS fidelity formula to 1e-12", passed=definitional <= 1e-12 and printed > 1e-6)
    rep.add("mems_chsh_paper_discrepancy", abs(_definitional(st.Mems(K.MEMS_CHSH_C)).m_value - 1.0), 1e-12,
            f"documented, definitional threshold C > {K.MEMS_CHSH_C:.6f} "
            f"(printed-T threshold C > {K.MEMS_CHSH_C_PAPER:.6f})")


def _fixture_records(rep):
    for t in (tables.table1(), tables.table2()):
        cols = [h for h in t.headers if h.endswith("_paper")]
        worst = (0.0, None)
        n_ok = n_all = 0
        for row in t.rows:
            for pc in cols:
                d = abs(row[t.headers.index(pc[:-6])] - row[t.headers.index(pc)])
                n_all += 1
                n_ok += d <= tables.FIXTURE_TOL
                if d > worst[0]:
                    worst = (d, (row[0], row[1], pc[:-6]))
        rep.records.append(f"{t.name}_fixture: {n_ok}/{n_all} printed values within "
                           f"{tables.FIXTURE_TOL:.0e}; worst {worst[0]:.2e} at {worst[1]}")


def run_checks(level="quick", samples=None, seed=0):
    if level not in ("quick", "full"):
        raise ValueError(f"unknown level {level!r}")
    full = level == "full"
    rng = np.random.default_rng(seed)
    rep = VerifyReport(level)
    n = 500 if full else 41
    _numerics_checks(rep, rng, 20 if full else 3)
    _state_checks(rep, n)
    _cross_pipeline_checks(rep, n)
    _fef_identity_checks(rep, n)
    _concurrence_checks(rep, rng, 500 if full else 50)
    _boundary_checks(rep, 1000 if full else 101)
    _fig1_checks(rep)
    _telesim_quick(rep)
    _werner_saturation(rep, 50 if full else 10)
    if full:
        channels = reference_states(20, seed)
        _standard_below_optimal(rep, channels)
        _monte_carlo(rep, channels[:5], samples or 100_000, seed)
        _oracle_checks(rep, channels[:10], 20_000, seed)
        _discrepancy_records(rep)
    _fixture_records(rep)
    return rep
