"""Analytic formulas for the four state families.

Nothing in this module touches a density matrix: every value comes from a
family's printed expression (or, where the literature prints none, from a
short hand derivation noted inline). :mod:`telemix.metrics` computes the
same quantities from matrices so the two routes can be cross-checked.

Piecewise formulas give a branch point to the branch that includes it in
``>=`` form: C = 2/3 uses h = C/2, p = 1/4 uses N = 1, p = 1/2 uses the
second correlation-eigenvalue ordering.
"""
from dataclasses import asdict, dataclass, field
import enum
import math
from typing import NamedTuple, Optional

from . import constants as K
from .errors import DomainError
from .states import Mems, NmemsNew, Werner, WernerDerivative, mems_h


class BellCase(str, enum.Enum):
    NOT_APPLICABLE = "NotApplicable"
    CASE_I = "CaseI"
    CASE_II = "CaseII"
    CASE_III = "CaseIII"
    SEPARABLE = "Separable"


class BellClassification(NamedTuple):
    case: BellCase
    beta: Optional[float]
    gamma: Optional[float]


@dataclass(frozen=True)
class FamilyClosedForm:
    family: object
    s_lin: float
    concurrence: float
    fef: float
    n_value: float
    m_value: float
    f_opt: float
    f_opt_raw: float
    entangled: bool
    useful: bool
    chsh_violated: bool
    case: Optional[str] = None
    paper_variant: Optional[dict] = field(default=None)

    def to_json(self):
        d = asdict(self)
        fam = self.family
        d["family"] = {"tag": fam.tag, **{k: v for k, v in vars(fam).items()}}
        return d


class CrossoverReport(NamedTuple):
    fw: float
    a: float
    p_max: float
    a_window: tuple
    feasible: bool


def _clamped(raw):
    return max(raw, K.CLASSICAL_FIDELITY)


def _fopt_from_n(n):
    return 0.5 * (1.0 + n / 3.0)


# -- Werner ----------------------------------------------------------------

def werner_fw_from_slin(s_lin):
    return (1.0 + 3.0 * math.sqrt(1.0 - s_lin)) / 4.0


def werner_cf(fw):
    spec = Werner(fw)
    x = (4.0 * fw - 1.0) / 3.0
    n = abs(4.0 * fw - 1.0)
    entangled = fw > 0.5
    return FamilyClosedForm(
        family=spec,
        # inverse of F_w = (1 + 3 sqrt(1 - S_L)) / 4, valid on the whole range
        s_lin=1.0 - x * x,
        concurrence=max(0.0, 2.0 * fw - 1.0),
        # F_w is the singlet fraction only for F_w >= 1/4; below that the
        # best maximally entangled state is orthogonal to the singlet.
        fef=max(fw, (1.0 - fw) / 3.0),
        n_value=n,
        m_value=2.0 * x * x,
        f_opt=(2.0 * fw + 1.0) / 3.0 if entangled else K.CLASSICAL_FIDELITY,
        f_opt_raw=(2.0 * fw + 1.0) / 3.0 if entangled else _fopt_from_n(n),
        entangled=entangled,
        useful=entangled,
        chsh_violated=fw > K.WERNER_CHSH_FW,
    )


# -- MJWK MEMS -------------------------------------------------------------

def mems_slin(c):
    if c >= K.MEMS_BRANCH_C:
        return 8.0 / 3.0 * (c - c * c)
    return 2.0 / 3.0 * (4.0 / 3.0 - c * c)


def mems_fopt_raw(c):
    if c >= K.MEMS_BRANCH_C:
        return (2.0 * c + 1.0) / 3.0
    return (5.0 + 3.0 * c) / 9.0


def mems_paper_variant(c):
    """Quantities built on the printed T_MEMS = diag(h + C, -C, 4h - 1).

    The first diagonal entry disagrees with a direct evaluation of the
    Pauli correlations (which gives C); kept for comparison only.
    """
    h = mems_h(c)
    u = sorted([(h + c) ** 2, c * c, (4.0 * h - 1.0) ** 2], reverse=True)
    n = abs(h + c) + abs(c) + abs(4.0 * h - 1.0)
    if c >= K.MEMS_BRANCH_C:
        m = 13.0 * c * c / 4.0
    elif c <= 1.0 / 3.0:
        m = 1.0 + (9.0 * c * c + 6.0 * c - 7.0) / 9.0
    else:
        m = 1.0 + 2.0 * (9.0 * c * c + 3.0 * c - 4.0) / 9.0
    return {
        "t_diag": [h + c, -c, 4.0 * h - 1.0],
        "u": u,
        "n_value": n,
        "f_opt_raw": _fopt_from_n(n),
        "m_value": m,
        "chsh_violated": c >= K.MEMS_BRANCH_C or c > K.MEMS_CHSH_C_PAPER,
    }


def mems_cf(c):
    spec = Mems(c)
    h = mems_h(c)
    s_lin = mems_slin(c)
    raw = mems_fopt_raw(c)
    # Correlation matrix evaluated directly: diag(C, -C, 4h - 1).
    m = max(2.0 * c * c, c * c + (4.0 * h - 1.0) ** 2)
    return FamilyClosedForm(
        family=spec,
        s_lin=s_lin,
        concurrence=c,
        fef=h + c / 2.0,
        n_value=3.0 * (2.0 * raw - 1.0),
        m_value=m,
        f_opt=_clamped(raw),
        f_opt_raw=raw,
        entangled=c > 0.0,
        useful=s_lin < K.MEMS_USEFUL_SLIN,
        chsh_violated=m > 1.0,
        paper_variant=mems_paper_variant(c),
    )


# -- Werner derivative -----------------------------------------------------

def wd_a_max(fw):
    """Upper end of the entangled (and teleportation-useful) range of ``a``."""
    return 0.5 * (1.0 + math.sqrt(3.0 * (4.0 * fw * fw - 1.0)) / (4.0 * fw - 1.0))


def wd_n(fw, a):
    return (4.0 * fw - 1.0) * (1.0 + 4.0 * math.sqrt(a * (1.0 - a))) / 3.0


def wd_fopt_raw(fw, a):
    return (9.0 + (4.0 * fw - 1.0) * (1.0 + 4.0 * math.sqrt(a * (1.0 - a)))) / 18.0


def wd_m(fw, a):
    return (1.0 + 4.0 * a - 4.0 * a * a) * (4.0 * fw - 1.0) ** 2 / 9.0


def wd_beta_gamma(fw):
    """Roots in ``a`` of M(rho_wd) = 1, or None when they are complex."""
    disc = 2.0 * (4.0 * fw - 1.0) ** 2 - 9.0
    if disc < 0.0:
        return None
    r = math.sqrt(disc) / (4.0 * fw - 1.0)
    return 0.5 * (1.0 - r), 0.5 * (1.0 + r)


def wd_bell_classify(fw, a, boundary_tol=1e-12):
    WernerDerivative(fw, a)
    if abs(fw - K.WERNER_CHSH_FW) <= boundary_tol:
        return BellClassification(BellCase.CASE_III, 0.5, 0.5)
    roots = wd_beta_gamma(fw)
    if roots is None:
        return BellClassification(BellCase.NOT_APPLICABLE, None, None)
    beta, gamma = roots
    if a < gamma:
        case = BellCase.CASE_II
    elif a < wd_a_max(fw):
        case = BellCase.CASE_I
    else:
        case = BellCase.SEPARABLE
    return BellClassification(case, beta, gamma)


def wd_cf(fw, a):
    spec = WernerDerivative(fw, a)
    x = (4.0 * fw - 1.0) / 3.0
    n = wd_n(fw, a)
    raw = wd_fopt_raw(fw, a)
    inside = a < wd_a_max(fw)
    # X-state concurrence 2 max(|rho_03| - sqrt(rho_11 rho_22), 0).
    conc = 2.0 * max(x * math.sqrt(a * (1.0 - a)) - (1.0 - fw) / 3.0, 0.0)
    bell = wd_bell_classify(fw, a)
    return FamilyClosedForm(
        family=spec,
        s_lin=1.0 - x * x,
        concurrence=conc,
        fef=(1.0 + n) / 4.0,
        n_value=n,
        m_value=wd_m(fw, a),
        f_opt=raw if inside else K.CLASSICAL_FIDELITY,
        f_opt_raw=raw,
        entangled=inside,
        useful=inside,
        chsh_violated=bell.case is BellCase.CASE_II,
        case=bell.case.value,
    )


# -- GHZ/W mixture ---------------------------------------------------------

def new_slin(p):
    return 2.0 * (8.0 + 14.0 * p - 13.0 * p * p) / 27.0


def new_p_from_slin(s_lin):
    return (14.0 - math.sqrt(612.0 - 702.0 * s_lin)) / 26.0


def new_concurrence(p):
    return 2.0 * max((1.0 - p) / 3.0 - math.sqrt(p * (p + 2.0) / 12.0), 0.0)


def new_cf(p):
    spec = NmemsNew(p)
    below = p < K.NEW_USEFUL_P
    raw = (7.0 - 4.0 * p) / 9.0 if below else K.CLASSICAL_FIDELITY
    if p < K.NEW_CASE_SPLIT_P:
        m = (8.0 + 8.0 * p * p - 16.0 * p) / 9.0
    else:
        m = (20.0 * p * p - 16.0 * p + 5.0) / 9.0
    return FamilyClosedForm(
        family=spec,
        s_lin=new_slin(p),
        concurrence=new_concurrence(p),
        # magic-basis diagonal is ((2p+1)/6, (2p+1)/6, 2(1-p)/3, 0), no off-diagonal real part
        fef=max((2.0 * p + 1.0) / 6.0, 2.0 * (1.0 - p) / 3.0),
        n_value=(5.0 - 8.0 * p) / 3.0 if below else 1.0,
        m_value=m,
        f_opt=raw,
        f_opt_raw=raw,
        entangled=p < K.NEW_ENTANGLED_P,
        useful=below,
        chsh_violated=False,
    )


_DISPATCH = {
    Werner: lambda s: werner_cf(s.fw),
    Mems: lambda s: mems_cf(s.c),
    WernerDerivative: lambda s: wd_cf(s.fw, s.a),
    NmemsNew: lambda s: new_cf(s.p),
}


def closed_form(spec):
    return _DISPATCH[type(spec)](spec)


# -- fidelity as a function of mixedness -----------------------------------

_SLIN_DOMAINS = {
    "werner": (0.0, K.WERNER_SLIN_MAX, True),
    "mems": (0.0, K.WERNER_SLIN_MAX, True),
    "wd": (0.0, K.WERNER_SLIN_MAX, False),
    "new": (K.NEW_SLIN_MIN, K.NEW_SLIN_MAX, False),
}


def fidelity_vs_entropy(family, s_lin, a=None):
    """Optimal fidelity of a family at linear entropy ``s_lin`` (unclamped formulas).

    Domains: werner and mems ``[0, 8/9]``; wd ``[0, 8/9)`` and needs ``a``;
    new ``[208/351, 2223/2808)``.
    """
    try:
        lo, hi, closed = _SLIN_DOMAINS[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}") from None
    # endpoints are computed constants; allow one rounding step at the closed ends
    eps = 1e-15
    inside = lo - eps <= s_lin and (s_lin <= hi + eps if closed else s_lin < hi)
    if not inside:
        bracket = "]" if closed else ")"
        raise DomainError(f"S_L={s_lin!r} outside [{lo:.9g}, {hi:.9g}{bracket} for {family}")

    if family == "werner":
        return (1.0 + math.sqrt(max(0.0, 1.0 - s_lin))) / 2.0
    if family == "mems":
        if s_lin <= K.MEMS_BRANCH_SLIN:
            return 2.0 / 3.0 + math.sqrt(max(0.0, 2.0 - 3.0 * s_lin)) / (3.0 * math.sqrt(2.0))
        return 5.0 / 9.0 + math.sqrt(max(0.0, 8.0 - 9.0 * s_lin)) / (3.0 * math.sqrt(6.0))
    if family == "wd":
        if a is None:
            raise ValueError("family 'wd' needs the parameter a")
        WernerDerivative(0.75, a)  # range check on a only
        return (9.0 + 3.0 * math.sqrt(1.0 - s_lin) * (1.0 + 4.0 * math.sqrt(a * (1.0 - a)))) / 18.0
    p = new_p_from_slin(max(s_lin, lo))
    return (7.0 - 4.0 * p) / 9.0


# -- wd versus the GHZ/W mixture -------------------------------------------

def crossover(fw, a):
    """Where the GHZ/W mixture beats the Werner derivative on N.

    ``p_max`` bounds the mixture weight (N_new > N_wd iff p < p_max);
    ``a_window`` is the range of ``a`` with ``p_max > 0`` inside the
    entangled region (lower end is NaN for F_w < 2/3).
    """
    WernerDerivative(fw, a)
    k = 4.0 * fw - 1.0
    p_max = 1.0 - ((1.0 + 2.0 * fw) / 4.0 + k * math.sqrt(a * (1.0 - a)) / 2.0)
    rad = (fw + 1.0) * (3.0 * fw - 2.0)
    lower = 0.5 + math.sqrt(rad) / k if rad >= 0.0 else math.nan
    upper = wd_a_max(fw)
    feasible = fw > K.CROSSOVER_FW_MIN and lower < a < upper and p_max > 0.0
    return CrossoverReport(fw, a, p_max, (lower, upper), feasible)
