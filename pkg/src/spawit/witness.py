"""Witnesses of the form W = sigma - c*I and the product-vector infimum.

The central quantity is

    c_max(sigma) = inf over unit |a>|b> of <a b| sigma |a b>,

the largest shift keeping ``sigma - c*I`` non-negative on product vectors.
It is estimated by a batched see-saw: with one factor fixed the problem is
an ordinary Hermitian eigenproblem on the other factor, so each half-step is
solved exactly and the objective never increases.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .errors import (
    DidNotConverge,
    ExceedsWeakOptimal,
    NotAState,
    NotAWitness,
    NotBlockPositive,
    NotHermitian,
)
from .linalg import (
    BipartiteOperator,
    expectation,
    is_hermitian,
    min_eigenvalue,
)

TOL_BLOCK = 1e-7
TOL_DETECT = 1e-10
PSD_TOL = 1e-10
DEFAULT_SEED = 0x5EED


@dataclass(frozen=True, eq=False)
class ProductVector:
    vec_a: np.ndarray
    vec_b: np.ndarray

    def __post_init__(self):
        for name in ("vec_a", "vec_b"):
            v = np.asarray(getattr(self, name), dtype=complex).ravel()
            if abs(np.linalg.norm(v) - 1.0) > 1e-10:
                raise ValueError(f"{name} is not a unit vector (norm {np.linalg.norm(v)!r})")
            object.__setattr__(self, name, v)

    @property
    def vector(self) -> np.ndarray:
        return np.kron(self.vec_a, self.vec_b)

    def tolist(self) -> dict:
        return {
            "vec_a": [[z.real, z.imag] for z in self.vec_a],
            "vec_b": [[z.real, z.imag] for z in self.vec_b],
        }


@dataclass(frozen=True)
class QubitAngles:
    """Bloch angles of a two-qubit product vector.

    Each factor is ``cos(theta/2)|0> + exp(i t) sin(theta/2)|1>``.
    """

    theta1: float
    theta2: float
    t1: float = 0.0
    t2: float = 0.0

    def product_vector(self) -> ProductVector:
        def qubit(theta, t):
            return np.array([np.cos(theta / 2), np.exp(1j * t) * np.sin(theta / 2)])

        return ProductVector(qubit(self.theta1, self.t1), qubit(self.theta2, self.t2))


@dataclass
class SeeSawOptions:
    restarts: int = 64
    seed: int = DEFAULT_SEED
    tol: float = 1e-12
    max_iter: int = 2000
    basis_starts: bool = True
    record_trace: bool = False


@dataclass(frozen=True, eq=False)
class CMaxResult:
    value: float
    argmin: ProductVector
    starts_used: int
    converged: bool
    certified_upper_bound: float
    lower_bound: float
    # objective after every half-step, one column per start (only when recorded)
    trace: Optional[np.ndarray] = field(default=None, repr=False)


def _conditioned_a(t: np.ndarray, y: np.ndarray) -> np.ndarray:
    return np.einsum("nj,ijkl,nl->nik", y.conj(), t, y)


def _conditioned_b(t: np.ndarray, x: np.ndarray) -> np.ndarray:
    return np.einsum("ni,ijkl,nk->njl", x.conj(), t, x)


def _random_units(rng: np.random.Generator, n: int, d: int) -> np.ndarray:
    z = rng.normal(size=(n, d)) + 1j * rng.normal(size=(n, d))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def c_max(sigma: BipartiteOperator, opts: SeeSawOptions | None = None, strict: bool = False) -> CMaxResult:
    """Estimate the minimum of <a b|sigma|a b> over unit product vectors.

    Works for any Hermitian operator, so it doubles as the block-positivity
    test for witnesses. The returned value is clamped into the certified
    interval [lambda_min(sigma), min_ij <ij|sigma|ij>].
    """
    opts = opts or SeeSawOptions()
    if not sigma.hermitian or not is_hermitian(sigma.matrix):
        raise NotHermitian("c_max needs a Hermitian operator")
    da, db = sigma.dims
    m = 0.5 * (sigma.matrix + sigma.matrix.conj().T)
    t = m.reshape(da, db, da, db)

    rng = np.random.default_rng(opts.seed)
    xs = [_random_units(rng, opts.restarts, da)]
    ys = [_random_units(rng, opts.restarts, db)]
    if opts.basis_starts:
        ea, eb = np.eye(da, dtype=complex), np.eye(db, dtype=complex)
        xs.append(np.repeat(ea, db, axis=0))
        ys.append(np.tile(eb, (da, 1)))
    x = np.concatenate(xs)
    y = np.concatenate(ys)
    n = x.shape[0]

    diag = np.real(np.diag(m))
    upper = float(diag.min())
    lower = min_eigenvalue(sigma)
    scale = max(1.0, float(np.max(np.abs(m))))

    obj = np.real(np.einsum("ni,nj,ijkl,nk,nl->n", x.conj(), y.conj(), t, x, y))
    history = [obj.copy()] if opts.record_trace else None
    active = np.ones(n, dtype=bool)
    for _ in range(opts.max_iter):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        w, v = np.linalg.eigh(_conditioned_a(t, y[idx]))
        x[idx] = v[:, :, 0]
        half = obj.copy()
        half[idx] = w[:, 0]
        w, v = np.linalg.eigh(_conditioned_b(t, x[idx]))
        y[idx] = v[:, :, 0]
        new = half.copy()
        new[idx] = w[:, 0]
        if history is not None:
            history.extend([half, new.copy()])
        done = np.abs(obj[idx] - new[idx]) <= opts.tol * scale
        obj = new
        active[idx[done]] = False

    best = int(np.argmin(obj))  # first index wins ties, independent of scheduling
    pv = ProductVector(x[best], y[best])
    value = float(expectation(m, pv.vector))
    value = min(max(value, lower), upper)
    result = CMaxResult(
        value=value,
        argmin=pv,
        starts_used=n,
        converged=not bool(active[best]),
        certified_upper_bound=upper,
        lower_bound=lower,
        trace=np.array(history) if history is not None else None,
    )
    if strict and not result.converged:
        raise DidNotConverge(f"see-saw did not converge in {opts.max_iter} iterations", result)
    return result


@dataclass(frozen=True, eq=False)
class WitnessValidation:
    lambda_min: float
    min_product: float
    argmin: ProductVector
    converged: bool


@dataclass(frozen=True, eq=False)
class Witness:
    operator: BipartiteOperator
    validation: WitnessValidation
    sigma: Optional[BipartiteOperator] = None
    c: Optional[float] = None

    @property
    def has_provenance(self) -> bool:
        return self.sigma is not None

    @property
    def dims(self) -> tuple[int, int]:
        return self.operator.dims


def _check_psd(o: BipartiteOperator, what: str = "operator", tol: float = PSD_TOL) -> float:
    lam = min_eigenvalue(o)
    if lam < -tol * max(1.0, o.norm()):
        raise NotAState(f"{what} is not positive semidefinite (min eigenvalue {lam:.3e})")
    return lam


def validate_witness(
    op: BipartiteOperator,
    opts: SeeSawOptions | None = None,
    cmax: CMaxResult | None = None,
) -> Witness:
    """Check that ``op`` is a witness: some negative eigenvalue, no negative product expectation.

    ``cmax`` may carry a precomputed product minimum of ``op`` itself.
    """
    lam = min_eigenvalue(op)
    if lam >= 0:
        raise NotAWitness(f"operator is positive semidefinite (min eigenvalue {lam:.3e}); it detects nothing")
    res = cmax if cmax is not None else c_max(op, opts)
    if res.value < -TOL_BLOCK:
        raise NotBlockPositive(f"product expectation {res.value:.3e} is negative")
    return Witness(op, WitnessValidation(lam, res.value, res.argmin, res.converged))


def from_separable(
    sigma: BipartiteOperator,
    c: float,
    sep_certificate: str | None = None,
    opts: SeeSawOptions | None = None,
    sigma_cmax: CMaxResult | None = None,
) -> Witness:
    """Build and validate ``W = sigma - c*I``.

    ``sep_certificate="ball"`` additionally demands that sigma lies in the
    separable ball around the maximally mixed state.
    """
    if c < 0:
        raise ValueError("c must be non-negative")
    lam_sigma = _check_psd(sigma, "sigma")
    if sep_certificate == "ball" and not in_separable_ball(sigma):
        raise NotAState("sigma is outside the certified separable ball")
    elif sep_certificate not in (None, "ball"):
        raise ValueError(f"unknown certificate {sep_certificate!r}")
    if c <= lam_sigma:
        raise NotAWitness(f"c = {c!r} <= lambda_min(sigma) = {lam_sigma!r}; sigma - cI is positive")
    res = sigma_cmax if sigma_cmax is not None else c_max(sigma, opts)
    if c > res.value + TOL_BLOCK:
        raise NotBlockPositive(f"c = {c!r} exceeds c_max(sigma) = {res.value!r}")
    op = sigma.shifted(-c)
    lam = lam_sigma - c
    validation = WitnessValidation(lam, res.value - c, res.argmin, res.converged)
    return Witness(op, validation, sigma=sigma, c=float(c))


def separable_ball_radius(dim: int) -> float:
    """Frobenius radius of the largest ball of separable states around I/dim."""
    return 1.0 / np.sqrt(dim * (dim - 1))


def ball_distance(o: BipartiteOperator) -> float:
    tr = o.trace().real
    if tr <= 0:
        return np.inf
    return float(np.linalg.norm(o.matrix / tr - np.eye(o.dim) / o.dim))


def in_separable_ball(o: BipartiteOperator, rtol: float = 1e-12) -> bool:
    return ball_distance(o) <= separable_ball_radius(o.dim) * (1 + rtol)


class DecomposedWitness(NamedTuple):
    sigma: BipartiteOperator
    c: float
    scale: float  # sigma - c*I == scale * w
    p: float  # depolarizing weight kept on the normalized positive part


def decompose_form(w: BipartiteOperator, opts: SeeSawOptions | None = None) -> DecomposedWitness:
    """Rewrite a witness as ``scale * w = sigma - c*I`` with sigma certified separable.

    Shifts ``w`` to the rank-deficient positive ``rho = w - lambda_min I``,
    normalizes it, and depolarizes with the largest weight ``p`` that lands
    in the separable ball.
    """
    validate_witness(w, opts)
    d = w.dim
    rho = w.shifted(-min_eigenvalue(w))
    c_rho = -min_eigenvalue(w)
    tr = rho.trace().real
    rho_n = rho.matrix / tr
    dist = np.linalg.norm(rho_n - np.eye(d) / d)
    p = min(1.0, separable_ball_radius(d) / dist) if dist > 0 else 1.0
    sigma = w.with_matrix(p * rho_n + (1 - p) * np.eye(d) / d)
    c = p * c_rho / tr + (1 - p) / d
    return DecomposedWitness(sigma, float(c), float(p / tr), float(p))


def weak_optimality(w: Witness, strict: bool = False) -> tuple[bool, Optional[ProductVector]]:
    """Whether the witness vanishes on some product vector, and that vector."""
    if strict and not w.validation.converged:
        raise DidNotConverge("product minimum of this witness is not converged")
    if w.validation.min_product <= TOL_BLOCK:
        return True, w.validation.argmin
    return False, None


def make_finer(w: Witness, delta: float, opts: SeeSawOptions | None = None) -> Witness:
    """Move ``sigma - c I`` to ``sigma - (c + delta) I``, which detects at least as much."""
    if not w.has_provenance:
        raise ValueError("make_finer needs a witness built from (sigma, c)")
    if delta <= 0:
        raise ValueError("delta must be positive")
    cmax_sigma = w.c + w.validation.min_product
    if w.c + delta > cmax_sigma + TOL_BLOCK:
        raise ExceedsWeakOptimal(f"c + delta = {w.c + delta!r} exceeds c_max = {cmax_sigma!r}")
    res = CMaxResult(cmax_sigma, w.validation.argmin, 0, w.validation.converged, np.inf, -np.inf)
    return from_separable(w.sigma, w.c + delta, opts=opts, sigma_cmax=res)


def detects(w: Witness | BipartiteOperator, state: BipartiteOperator) -> tuple[bool, float]:
    op = w.operator if isinstance(w, Witness) else w
    if state.trace().real <= 0:
        raise NotAState("state has non-positive trace")
    _check_psd(state, "state")
    value = float(np.real(np.sum(op.matrix * state.matrix.T)))
    return value < -TOL_DETECT, value


def korbicz_product_expectation(a: float, b: float, angles: QubitAngles) -> float:
    """Closed-form <mu nu|W(a,b)|mu nu> for the two-qubit Korbicz witness."""
    h1, h2 = angles.theta1 / 2, angles.theta2 / 2
    c1, s1, c2, s2 = np.cos(h1), np.sin(h1), np.cos(h2), np.sin(h2)
    populations = c1**2 * c2**2 + c1**2 * s2**2 + s1**2 * c2**2 + s1**2 * s2**2
    coherence = c1 * s2 * s1 * c2 * 2 * np.cos(angles.t1 - angles.t2)
    return float(
        0.5 * (a + b) * populations
        + (a + b) * coherence
        + 0.5 * (a - b) * np.cos(angles.theta1) * np.cos(angles.theta2)
    )


product_expectation_closed_form = korbicz_product_expectation
