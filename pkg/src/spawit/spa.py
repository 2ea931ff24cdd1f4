"""Structural physical approximation of witnesses and separability verdicts.

At the operator level the SPA of a witness W is ``W + s I`` with the
smallest ``s`` making it positive, i.e. ``s = -lambda_min(W)``. The noise
weight of the map-level picture follows from ``s = p / ((1 - p) d)``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

from .errors import DimensionTooLarge, NotAState, PtPositive
from .linalg import BipartiteOperator, hermitian_eig, min_eigenvalue, partial_transpose
from .witness import (
    ProductVector,
    SeeSawOptions,
    Witness,
    from_separable,
    in_separable_ball,
    validate_witness,
    weak_optimality,
)

TOL_PPT = 1e-9
LOW_DIM_LIMIT = 6
SPECTRAL_GAP_TOL = 1e-12
CONJECTURE_GAP_TOL = 1e-9


class Outcome(str, enum.Enum):
    SEPARABLE = "Separable"
    ENTANGLED = "Entangled"
    INCONCLUSIVE = "Inconclusive"


class Certificate(str, enum.Enum):
    PPT_LOW_DIM = "PptAndLowDim"
    NPT_EIGENVALUE = "NptEigenvalue"
    PPT_HIGH_DIM = "PptHighDim"
    SEPARABLE_BALL = "SeparableBall"


class Claim(enum.IntEnum):
    NONE = 0
    WEAKLY_OPTIMAL = 1
    OPTIMAL = 2
    OPTIMAL_NONDECOMPOSABLE = 3

    @classmethod
    def parse(cls, text: str) -> "Claim":
        aliases = {
            "none": cls.NONE,
            "weak": cls.WEAKLY_OPTIMAL,
            "optimal": cls.OPTIMAL,
            "onew": cls.OPTIMAL_NONDECOMPOSABLE,
        }
        try:
            return aliases[text.lower()]
        except KeyError:
            return cls[text.upper()]


@dataclass(frozen=True)
class SeparabilityVerdict:
    outcome: Outcome
    certificate: Certificate
    min_pt_eigenvalue: float

    @property
    def separable(self) -> bool:
        return self.outcome is Outcome.SEPARABLE

    @property
    def entangled(self) -> bool:
        return self.outcome is Outcome.ENTANGLED

    def asdict(self) -> dict:
        return {
            "outcome": self.outcome.value,
            "certificate": self.certificate.value,
            "min_pt_eigenvalue": self.min_pt_eigenvalue,
        }


def separability_verdict(o: BipartiteOperator) -> SeparabilityVerdict:
    """PPT test, sufficient for d_A*d_B <= 6; otherwise only the ball certificate can certify."""
    scale = max(1.0, o.norm())
    lam = min_eigenvalue(o)
    if lam < -1e-9 * scale:
        raise NotAState(f"operator has negative eigenvalue {lam:.3e}")
    lam_pt = min_eigenvalue(partial_transpose(o))
    if lam_pt < -TOL_PPT * scale:
        return SeparabilityVerdict(Outcome.ENTANGLED, Certificate.NPT_EIGENVALUE, lam_pt)
    if o.dim <= LOW_DIM_LIMIT:
        return SeparabilityVerdict(Outcome.SEPARABLE, Certificate.PPT_LOW_DIM, lam_pt)
    if in_separable_ball(o):
        return SeparabilityVerdict(Outcome.SEPARABLE, Certificate.SEPARABLE_BALL, lam_pt)
    return SeparabilityVerdict(Outcome.INCONCLUSIVE, Certificate.PPT_HIGH_DIM, lam_pt)


def noise_from_shift(s: float, dim: int) -> float:
    return s * dim / (1.0 + s * dim)


def shift_from_noise(p: float, dim: int) -> float:
    return p / ((1.0 - p) * dim)


@dataclass(frozen=True, eq=False)
class SpaReport:
    input: Witness
    shift_s: float
    noise_p: float
    approximated: BipartiteOperator
    verdict: SeparabilityVerdict

    @property
    def entanglement_breaking(self) -> Optional[bool]:
        """True/False when decided, None when inconclusive."""
        if self.verdict.outcome is Outcome.INCONCLUSIVE:
            return None
        return self.verdict.separable


def _operator(w: Witness | BipartiteOperator) -> BipartiteOperator:
    return w.operator if isinstance(w, Witness) else w


def spa_operator(w: Witness | BipartiteOperator) -> tuple[BipartiteOperator, float]:
    op = _operator(w)
    s = max(0.0, -min_eigenvalue(op))
    return op.shifted(s), s


def spa_witness(w: Witness) -> SpaReport:
    approx, s = spa_operator(w)
    p = noise_from_shift(s, w.operator.dim)
    return SpaReport(w, s, p, approx, separability_verdict(approx))


def spa_of_state_form(sigma: BipartiteOperator, c: float, opts: SeeSawOptions | None = None) -> BipartiteOperator:
    """SPA of ``sigma - c I``; it equals ``sigma - lambda_min(sigma) I`` whatever c is."""
    from_separable(sigma, c, opts=opts)
    return sigma.shifted(-min_eigenvalue(sigma))


@dataclass(frozen=True)
class Theorem3Result:
    violating: bool
    lambda_w: float
    lambda_wpt: float


def theorem3_check(w: Witness | BipartiteOperator) -> Theorem3Result:
    """A more negative partial transpose forces an NPT, hence entangled, SPA."""
    op = _operator(w)
    lw = min_eigenvalue(op)
    lpt = min_eigenvalue(partial_transpose(op))
    return Theorem3Result(lpt < lw - SPECTRAL_GAP_TOL, lw, lpt)


def pt_witness(w: Witness, opts: SeeSawOptions | None = None) -> Witness:
    wpt = partial_transpose(w.operator)
    lam = min_eigenvalue(wpt)
    if lam >= 0:
        raise PtPositive(f"partial transpose is positive semidefinite (min eigenvalue {lam:.3e})")
    return validate_witness(wpt, opts)


@dataclass(frozen=True, eq=False)
class Theorem4Report:
    spa_w: SeparabilityVerdict
    spa_wpt: Optional[SeparabilityVerdict]  # None when W^Gamma is positive

    @property
    def pt_positive(self) -> bool:
        return self.spa_wpt is None

    @property
    def holds(self) -> bool:
        if self.spa_wpt is None:
            return self.spa_w.separable
        return self.spa_w.separable or self.spa_wpt.separable


def theorem4_check(w: Witness, opts: SeeSawOptions | None = None) -> Theorem4Report:
    if w.operator.dim > LOW_DIM_LIMIT:
        raise DimensionTooLarge(f"d_A*d_B = {w.operator.dim} > {LOW_DIM_LIMIT}")
    spa_w = spa_witness(w).verdict
    try:
        wpt = pt_witness(w, opts)
    except PtPositive:
        return Theorem4Report(spa_w, None)
    return Theorem4Report(spa_w, spa_witness(wpt).verdict)


@dataclass(frozen=True)
class ViolationCertificate:
    rule: str  # "corollary9" or "corollary10"
    side: str  # "W" or "W^Gamma": whose SPA fails to be separable
    lambda_w: float
    lambda_wpt: float
    side_verdict: SeparabilityVerdict

    def asdict(self) -> dict:
        return {
            "rule": self.rule,
            "side": self.side,
            "lambda_w": self.lambda_w,
            "lambda_wpt": self.lambda_wpt,
            "side_verdict": self.side_verdict.asdict(),
        }


@dataclass(frozen=True, eq=False)
class ConjectureReport:
    claim: Claim
    spa_verdict: SeparabilityVerdict
    weakly_optimal: bool
    vanishing_vector: Optional[ProductVector]
    theorem3: Theorem3Result
    certificates: list[ViolationCertificate] = field(default_factory=list)

    @property
    def violates(self) -> bool:
        return bool(self.certificates)


def conjecture_check(w: Witness, claim: Claim = Claim.NONE) -> ConjectureReport:
    """Look for certificates that an optimal witness has a non-separable SPA.

    Optimality is never computed here; ``claim`` is metadata supplied by the
    caller.
    """
    claim = Claim(claim)
    report = spa_witness(w)
    flag, vec = weak_optimality(w)
    t3 = theorem3_check(w)
    certs = []
    if claim >= Claim.OPTIMAL and report.verdict.entangled:
        certs.append(ViolationCertificate("corollary9", "W", t3.lambda_w, t3.lambda_wpt, report.verdict))
    if claim is Claim.OPTIMAL_NONDECOMPOSABLE and abs(t3.lambda_wpt - t3.lambda_w) > CONJECTURE_GAP_TOL:
        if t3.lambda_wpt < t3.lambda_w:
            side, verdict = "W", report.verdict
        else:
            side = "W^Gamma"
            approx, _ = spa_operator(partial_transpose(w.operator))
            verdict = separability_verdict(approx)
        certs.append(ViolationCertificate("corollary10", side, t3.lambda_w, t3.lambda_wpt, verdict))
    return ConjectureReport(claim, report.verdict, flag, vec, t3, certs)


def pt_spectra(o: BipartiteOperator) -> dict:
    return {
        "eigenvalues_w": hermitian_eig(o).eigenvalues.tolist(),
        "eigenvalues_wpt": hermitian_eig(partial_transpose(o)).eigenvalues.tolist(),
    }
