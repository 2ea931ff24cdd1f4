"""Choi-Jamiolkowski bridge between maps and witnesses.

Convention: a map Lambda from d_A x d_A matrices to d_B x d_B matrices has
Choi state ``C = (id (x) Lambda)(P_+)`` with ``P_+ = |beta><beta|`` and
``|beta> = d_A^{-1/2} sum_i |ii>``. The identity channel maps to P_+, and
trace-preserving maps have trace-one Choi states. A witness is read as a
Choi matrix without rescaling.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .errors import NotAState, NotCP
from .linalg import BipartiteOperator, as_matrix, hermitian_eig, is_hermitian, min_eigenvalue
from .spa import SeparabilityVerdict, separability_verdict

CP_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class ChoiMatrix:
    operator: BipartiteOperator

    @property
    def dim_in(self) -> int:
        return self.operator.dim_a

    @property
    def dim_out(self) -> int:
        return self.operator.dim_b

    @property
    def matrix(self) -> np.ndarray:
        return self.operator.matrix

    def is_cp(self, tol: float = CP_TOL) -> bool:
        return min_eigenvalue(self.operator) >= -tol * max(1.0, self.operator.norm())


def choi_of_witness(w: BipartiteOperator) -> ChoiMatrix:
    if not is_hermitian(w.matrix):
        raise ValueError("witness must be Hermitian")
    return ChoiMatrix(w)


def witness_of_choi(c: ChoiMatrix) -> BipartiteOperator:
    return c.operator


def max_entangled(d: int) -> BipartiteOperator:
    beta = np.eye(d).reshape(-1) / np.sqrt(d)
    return BipartiteOperator(np.outer(beta, beta.conj()), d, d)


def choi_of_map(fn: Callable[[np.ndarray], np.ndarray], dim_in: int, dim_out: int) -> ChoiMatrix:
    """Choi state of a linear map given as a Python callable."""
    c = np.zeros((dim_in * dim_out, dim_in * dim_out), dtype=complex)
    for i in range(dim_in):
        for j in range(dim_in):
            e = np.zeros((dim_in, dim_in), dtype=complex)
            e[i, j] = 1.0
            c += np.kron(e, fn(e))
    c /= dim_in
    return ChoiMatrix(BipartiteOperator(c, dim_in, dim_out, hermitian=is_hermitian(c)))


def _check_state(rho: np.ndarray, dim: int) -> None:
    if rho.shape != (dim, dim):
        raise NotAState(f"state shape {rho.shape} does not match input dimension {dim}")
    if not is_hermitian(rho):
        raise NotAState("state is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > 1e-10:
        raise NotAState(f"state trace {np.trace(rho).real!r} is not 1")
    if hermitian_eig(rho).min < -1e-10:
        raise NotAState("state is not positive semidefinite")


def apply_map(c: ChoiMatrix, rho: np.ndarray, check: bool = True) -> np.ndarray:
    """``Lambda(rho) = d_A tr_A[(rho^T (x) I) C]``."""
    rho = as_matrix(rho)
    if check:
        _check_state(rho, c.dim_in)
    t = c.matrix.reshape(c.dim_in, c.dim_out, c.dim_in, c.dim_out)
    return c.dim_in * np.einsum("ik,ijkl->jl", rho, t)


class SpaMapResult(NamedTuple):
    choi: ChoiMatrix
    p_star: float
    already_cp: bool


def spa_map(c: ChoiMatrix) -> SpaMapResult:
    """Minimal white-noise admixture ``p tr(.) I/d_B + (1-p) Lambda`` that is CP."""
    d = c.operator.dim
    lam = min_eigenvalue(c.operator)
    if lam >= 0:
        return SpaMapResult(c, 0.0, True)
    p = -lam * d / (1.0 - lam * d)
    m = p * np.eye(d) / d + (1 - p) * c.matrix
    return SpaMapResult(ChoiMatrix(c.operator.with_matrix(m)), float(p), False)


def depolarize(rho: BipartiteOperator, p: float) -> BipartiteOperator:
    """``(1-p) I/d + p rho``; p is the weight kept on rho."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    return rho.with_matrix((1 - p) * np.eye(rho.dim) / rho.dim + p * rho.matrix)


def is_entanglement_breaking(c: ChoiMatrix) -> SeparabilityVerdict:
    if not c.is_cp():
        raise NotCP("Choi matrix is not positive semidefinite")
    return separability_verdict(c.operator)
