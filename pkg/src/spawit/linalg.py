"""Dense complex linear algebra on bipartite operators.

All operators use the A-major basis ordering: the product state |i>_A |j>_B
sits at index ``i * dim_b + j``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, Union

import numpy as np

from .errors import NotHermitian, NotNormalized

HERMITIAN_RTOL = 1e-12
NORMALIZATION_TOL = 1e-10
IMAG_RESIDUE_TOL = 1e-10

Subsystem = Literal["A", "B"]


def hermiticity_defect(m: np.ndarray) -> float:
    """Relative deviation ``max|M - M^H| / max(1, max|M|)``."""
    m = np.asarray(m)
    scale = max(1.0, float(np.max(np.abs(m)))) if m.size else 1.0
    return float(np.max(np.abs(m - m.conj().T))) / scale


def is_hermitian(m: np.ndarray, rtol: float = HERMITIAN_RTOL) -> bool:
    return hermiticity_defect(m) <= rtol


@dataclass(frozen=True, eq=False)
class BipartiteOperator:
    """Square matrix on C^dim_a (x) C^dim_b.

    ``hermitian`` is a claim checked at construction; pass ``hermitian=False``
    for operators that are not meant to be self-adjoint.
    """

    matrix: np.ndarray
    dim_a: int
    dim_b: int
    hermitian: bool = True

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        d = self.dim_a * self.dim_b
        if self.dim_a < 2 or self.dim_b < 2:
            raise ValueError(f"subsystem dimensions must be >= 2, got ({self.dim_a}, {self.dim_b})")
        if m.shape != (d, d):
            raise ValueError(f"matrix shape {m.shape} does not match dims ({self.dim_a}, {self.dim_b})")
        if not np.all(np.isfinite(m)):
            raise ValueError("matrix has non-finite entries")
        if self.hermitian and not is_hermitian(m):
            raise NotHermitian(f"hermiticity defect {hermiticity_defect(m):.3e} exceeds {HERMITIAN_RTOL:g}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dims(self) -> tuple[int, int]:
        return (self.dim_a, self.dim_b)

    @property
    def dim(self) -> int:
        return self.dim_a * self.dim_b

    def with_matrix(self, m: np.ndarray, hermitian: bool | None = None) -> "BipartiteOperator":
        return BipartiteOperator(m, self.dim_a, self.dim_b, self.hermitian if hermitian is None else hermitian)

    def shifted(self, s: float) -> "BipartiteOperator":
        """``self + s * I``."""
        return self.with_matrix(self.matrix + s * np.eye(self.dim))

    def scaled(self, g: float) -> "BipartiteOperator":
        return self.with_matrix(g * self.matrix)

    def trace(self) -> complex:
        return complex(np.trace(self.matrix))

    def norm(self) -> float:
        """Spectral norm."""
        return float(np.linalg.norm(self.matrix, 2))

    def allclose(self, other: "BipartiteOperator", atol: float = 1e-12) -> bool:
        return self.dims == other.dims and bool(np.max(np.abs(self.matrix - other.matrix)) <= atol)


def identity(dim_a: int, dim_b: int) -> BipartiteOperator:
    return BipartiteOperator(np.eye(dim_a * dim_b), dim_a, dim_b)


def as_matrix(o: Union[BipartiteOperator, np.ndarray]) -> np.ndarray:
    return o.matrix if isinstance(o, BipartiteOperator) else np.asarray(o, dtype=complex)


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.kron(np.asarray(a), np.asarray(b))


@dataclass(frozen=True, eq=False)
class Spectrum:
    eigenvalues: np.ndarray  # ascending
    eigenvectors: np.ndarray = field(repr=False)  # column k pairs with eigenvalue k

    @property
    def min(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def ground_state(self) -> np.ndarray:
        return self.eigenvectors[:, 0]


def jacobi_eigh(m: np.ndarray, tol: float = 1e-12, max_sweeps: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi diagonalization of a complex Hermitian matrix.

    Each rotation first absorbs the phase of the pivot so the 2x2 block is
    real symmetric, then applies the classic Givens angle. Stops when the
    off-diagonal Frobenius mass drops below ``tol * ||M||_F``.
    """
    a = np.array(m, dtype=complex)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    target = tol * max(np.linalg.norm(a), np.finfo(float).tiny)
    for _ in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                phase = apq / mag
                tau = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                g = np.array([[c, s * phase], [-s * np.conj(phase), c]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ g
                a[idx, :] = g.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                v[:, idx] = v[:, idx] @ g
    else:
        raise RuntimeError("Jacobi iteration did not converge")
    w = np.diag(a).real
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def hermitian_eig(m: Union[BipartiteOperator, np.ndarray], method: str = "lapack") -> Spectrum:
    """Full spectrum of a Hermitian operator, eigenvalues ascending.

    ``method="jacobi"`` uses :func:`jacobi_eigh`; the default delegates to
    LAPACK through numpy.
    """
    mat = as_matrix(m)
    if isinstance(m, BipartiteOperator) and not m.hermitian:
        raise NotHermitian("operator is not flagged Hermitian")
    if not is_hermitian(mat):
        raise NotHermitian(f"hermiticity defect {hermiticity_defect(mat):.3e}")
    h = 0.5 * (mat + mat.conj().T)
    if method == "jacobi":
        w, v = jacobi_eigh(h)
    elif method == "lapack":
        w, v = np.linalg.eigh(h)
    else:
        raise ValueError(f"unknown method {method!r}")
    return Spectrum(w, v)


def min_eigenvalue(m: Union[BipartiteOperator, np.ndarray]) -> float:
    return hermitian_eig(m).min


def _check_subsystem(subsystem: str) -> str:
    if subsystem not in ("A", "B"):
        raise ValueError(f"subsystem must be 'A' or 'B', got {subsystem!r}")
    return subsystem


def partial_transpose(o: BipartiteOperator, subsystem: Subsystem = "B") -> BipartiteOperator:
    da, db = o.dims
    t = o.matrix.reshape(da, db, da, db)
    if _check_subsystem(subsystem) == "B":
        t = t.transpose(0, 3, 2, 1)
    else:
        t = t.transpose(2, 1, 0, 3)
    return o.with_matrix(t.reshape(da * db, da * db))


def partial_trace(o: BipartiteOperator, subsystem: Subsystem) -> np.ndarray:
    """Trace out ``subsystem``; returns the reduced matrix on the other factor."""
    da, db = o.dims
    t = o.matrix.reshape(da, db, da, db)
    if _check_subsystem(subsystem) == "A":
        return np.einsum("ijil->jl", t)
    return np.einsum("ijkj->ik", t)


def expectation(o: Union[BipartiteOperator, np.ndarray], v: np.ndarray) -> float:
    """Real expectation value <v|o|v> for Hermitian o and unit v."""
    mat = as_matrix(o)
    if not is_hermitian(mat):
        raise NotHermitian(f"hermiticity defect {hermiticity_defect(mat):.3e}")
    v = np.asarray(v, dtype=complex).ravel()
    nrm = np.linalg.norm(v)
    if abs(nrm - 1.0) > NORMALIZATION_TOL:
        raise NotNormalized(f"vector norm {nrm!r} is not 1")
    val = np.vdot(v, mat @ v)
    if abs(val.imag) > IMAG_RESIDUE_TOL * max(1.0, float(np.max(np.abs(mat)))):
        raise NotHermitian(f"expectation has imaginary part {val.imag:.3e}")
    return float(val.real)


def random_hermitian(dim: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return 0.5 * (g + g.conj().T)


def random_density(dim: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    """Ginibre-distributed density matrix (full rank unless ``rank`` given)."""
    k = dim if rank is None else rank
    g = rng.normal(size=(dim, k)) + 1j * rng.normal(size=(dim, k))
    rho = g @ g.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    return rho / np.trace(rho).real
