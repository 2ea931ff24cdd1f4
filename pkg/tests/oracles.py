"""Independent reference computations used only by the tests."""
import numpy as np
from scipy.optimize import minimize


def qubit_product(theta1, theta2, t1, t2):
    a = np.stack([np.cos(theta1 / 2), np.exp(1j * t1) * np.sin(theta1 / 2)], axis=-1)
    b = np.stack([np.cos(theta2 / 2), np.exp(1j * t2) * np.sin(theta2 / 2)], axis=-1)
    return np.einsum("...i,...j->...ij", a, b).reshape(*np.shape(theta1), 4)


def qubit_cmax_grid(sigma: np.ndarray, n_theta: int = 24, n_phase: int = 16, refine: int = 8) -> float:
    """Product minimum on two qubits: grid over all four angles, then Nelder-Mead from distinct basins."""
    th = np.linspace(0, np.pi, n_theta)
    ph = np.linspace(-np.pi, np.pi, n_phase, endpoint=False)
    grid = np.meshgrid(th, th, ph, ph, indexing="ij")
    v = qubit_product(*grid).reshape(-1, 4)
    vals = np.real(np.einsum("ni,ij,nj->n", v.conj(), sigma, v))
    flat = np.stack([g.ravel() for g in grid], axis=1)
    order = []
    for k in np.argsort(vals):
        if all(np.abs(flat[k] - flat[j]).max() > 0.5 for j in order):
            order.append(k)
        if len(order) == refine:
            break

    def f(x):
        w = qubit_product(*(np.array(t) for t in x))
        return float(np.real(np.vdot(w, sigma @ w)))

    best = vals[order[0]]
    for k in order:
        res = minimize(f, flat[k], method="Nelder-Mead", options={"xatol": 1e-12, "fatol": 1e-15, "maxiter": 20000})
        best = min(best, res.fun)
    return float(best)


def brute_partial_transpose_b(m: np.ndarray, da: int, db: int) -> np.ndarray:
    out = np.zeros_like(m)
    for i in range(da):
        for j in range(db):
            for k in range(da):
                for l in range(db):
                    out[i * db + l, k * db + j] = m[i * db + j, k * db + l]
    return out


def korbicz_trace_formula(a: float, b: float, rho: np.ndarray) -> float:
    """tr(W rho) expanded entrywise for the two-qubit Korbicz witness."""
    return float(np.real(a * (rho[0, 0] + rho[1, 2] + rho[2, 1] + rho[3, 3])
                         + b * (rho[1, 1] + rho[1, 2] + rho[2, 1] + rho[2, 2])))
