"""Exact constructors for the operator families used throughout the package.

Optimality claims attached to entries come from the literature on each
family; they are never inferred numerically.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import BadParameter, NotAWitness, NotBlockPositive, RetryExhausted
from .linalg import BipartiteOperator, min_eigenvalue, partial_transpose, random_density
from .spa import Claim
from .witness import (
    SeeSawOptions,
    Witness,
    c_max,
    from_separable,
    separable_ball_radius,
    validate_witness,
)


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    name: str
    params: dict
    operator: BipartiteOperator
    optimality_claim: Claim
    source: str
    kind: str = "witness"
    notes: str = ""
    witness: Optional[Witness] = field(default=None, repr=False)

    def as_witness(self, opts: SeeSawOptions | None = None) -> Witness:
        if self.witness is not None:
            return self.witness
        if self.kind != "witness":
            raise NotAWitness(f"catalog entry {self.name!r} is a {self.kind}")
        return validate_witness(self.operator, opts)


def _ket(*bits: int, d: int = 2) -> np.ndarray:
    v = np.zeros(d ** len(bits), dtype=complex)
    v[int("".join(map(str, bits)), d)] = 1.0
    return v


def _proj(u: np.ndarray, v: np.ndarray | None = None) -> np.ndarray:
    return np.outer(u, (u if v is None else v).conj())


def swap_operator(d: int) -> np.ndarray:
    v = np.zeros((d * d, d * d))
    for i in range(d):
        for j in range(d):
            v[j * d + i, i * d + j] = 1.0
    return v


def korbicz_witness(a: float, b: float) -> CatalogEntry:
    """``Q1 + Q2^Gamma`` on two qubits; weakly optimal for every a, b > 0."""
    if not (a > 0 and b > 0):
        raise BadParameter("korbicz witness needs a > 0 and b > 0")
    k00, k01, k10, k11 = (_ket(*bits) for bits in [(0, 0), (0, 1), (1, 0), (1, 1)])
    w = (
        a * (_proj(k00) + _proj(k11))
        + b * (_proj(k01) + _proj(k10))
        + (a + b) * (_proj(k01, k10) + _proj(k10, k01))
    )
    return CatalogEntry(
        name="korbicz",
        params={"a": a, "b": b},
        operator=BipartiteOperator(w, 2, 2),
        optimality_claim=Claim.WEAKLY_OPTIMAL,
        source="Korbicz et al., Phys. Rev. A 78, 062105 (2008)",
        notes="weakly optimal, not optimal",
    )


def ha_matrix(a: float, b: float, c: float, theta: float) -> np.ndarray:
    """The 3x3 family W[a,b,c;theta] in its usual displayed form."""
    m = np.diag([a, c, b, b, a, c, c, b, a]).astype(complex)
    e = np.exp(1j * theta)
    m[0, 4], m[4, 0] = -e, -np.conj(e)
    m[0, 8], m[8, 0] = -np.conj(e), -e
    m[4, 8], m[8, 4] = -e, -np.conj(e)
    return m


def ha_witness(a: float, b: float, c: float, theta: float) -> CatalogEntry:
    """Optimal non-decomposable 3x3 witness of the Ha-Kye family.

    The entry operator is the partial transpose of :func:`ha_matrix`. That
    orientation carries lambda_min(W) ~ -0.7286 and lambda_min(W^Gamma) ~
    -0.6440 at the standard violating parameters; both orientations are
    optimal and non-decomposable.
    """
    if min(a, b, c) < 0:
        raise BadParameter("ha witness needs a, b, c >= 0")
    if not -np.pi <= theta <= np.pi:
        raise BadParameter("theta must lie in [-pi, pi]")
    display = BipartiteOperator(ha_matrix(a, b, c, theta), 3, 3)
    return CatalogEntry(
        name="ha",
        params={"a": a, "b": b, "c": c, "theta": theta},
        operator=partial_transpose(display),
        optimality_claim=Claim.OPTIMAL_NONDECOMPOSABLE,
        source="Ha and Kye (2012)",
        notes="c = 0 admitted at the boundary of the family" if c == 0 else "",
    )


def ha_violation_instance() -> CatalogEntry:
    cth = np.cos(np.pi / 12)
    return ha_witness(4 / 3 * cth, 2 / 3 * cth, 0.0, np.pi / 12)


def swap_threshold(d: int) -> float:
    """Smallest identity weight p for which ``p/d^2 I + (1-p)/d V`` is positive."""
    return d * d / (d + d * d)


def swap_state(d: int, p: float) -> BipartiteOperator:
    if p < swap_threshold(d) - 1e-15 or p > 1:
        raise BadParameter(f"p = {p!r} outside [{swap_threshold(d)!r}, 1]")
    m = p / d**2 * np.eye(d * d) + (1 - p) / d * swap_operator(d)
    return BipartiteOperator(m, d, d)


def swap_witness(d: int = 2) -> CatalogEntry:
    if d < 2:
        raise BadParameter("d must be >= 2")
    return CatalogEntry(
        name="swap",
        params={"d": d, "state_threshold": swap_threshold(d)},
        operator=BipartiteOperator(swap_operator(d), d, d),
        optimality_claim=Claim.OPTIMAL if d == 2 else Claim.NONE,
        source="Werner, Phys. Rev. A 40, 4277 (1989)",
    )


def transpose_witness() -> CatalogEntry:
    """``V/2`` on two qubits: the Choi state of the transpose map."""
    return CatalogEntry(
        name="transpose",
        params={},
        operator=BipartiteOperator(swap_operator(2) / 2, 2, 2),
        optimality_claim=Claim.OPTIMAL,
        source="Fiurasek, Phys. Rev. A 66, 052315 (2002)",
    )


def _special_states() -> tuple[BipartiteOperator, BipartiteOperator]:
    sigma = np.diag([0.5, 0.8, 0.8, 0.5]).astype(complex)
    sigma[1, 2] = sigma[2, 1] = 0.5
    rho = np.diag([0.2, 0.5, 0.5, 0.2]).astype(complex)
    rho[1, 2] = rho[2, 1] = 0.5
    return BipartiteOperator(rho, 2, 2), BipartiteOperator(sigma, 2, 2)


def special_case() -> tuple[CatalogEntry, BipartiteOperator, BipartiteOperator]:
    """Two-qubit worked example: ``W = sigma - 0.4 I = rho - 0.1 I``.

    Built from (sigma, c); the result coincides with ``korbicz_witness(0.1, 0.4)``.
    """
    rho, sigma = _special_states()
    w = sigma.shifted(-0.4)
    assert w.allclose(rho.shifted(-0.1), atol=1e-15)
    entry = CatalogEntry(
        name="special-case",
        params={"c": 0.4},
        operator=w,
        optimality_claim=Claim.WEAKLY_OPTIMAL,
        source="two-qubit example, equal to korbicz(a=0.1, b=0.4)",
    )
    return entry, rho, sigma


def bell_pt_witness() -> CatalogEntry:
    """``|00><00| + |11><11| + |01><10| + |10><01|``, i.e. 2 |phi+><phi+|^Gamma."""
    k00, k01, k10, k11 = (_ket(*bits) for bits in [(0, 0), (0, 1), (1, 0), (1, 1)])
    w = _proj(k00) + _proj(k11) + _proj(k01, k10) + _proj(k10, k01)
    return CatalogEntry(
        name="bell-pt",
        params={},
        operator=BipartiteOperator(w, 2, 2),
        optimality_claim=Claim.OPTIMAL,
        source="Augusiak et al. (2011)",
    )


def ball_state(rho: np.ndarray, dim_a: int, dim_b: int) -> BipartiteOperator:
    """Depolarize ``rho`` just enough to land in the separable ball."""
    d = dim_a * dim_b
    rho = rho / np.trace(rho).real
    dist = np.linalg.norm(rho - np.eye(d) / d)
    p = min(1.0, separable_ball_radius(d) / dist) if dist > 0 else 1.0
    return BipartiteOperator(p * rho + (1 - p) * np.eye(d) / d, dim_a, dim_b)


def random_witness(
    dims: tuple[int, int],
    seed: int,
    eps: float = 1e-6,
    opts: SeeSawOptions | None = None,
    max_draws: int = 100,
) -> CatalogEntry:
    """Random witness ``sigma - c I`` over a ball-certified separable sigma.

    c is uniform in (lambda_min(sigma) + eps, c_max(sigma)].
    """
    da, db = dims
    if da * db > 9:
        raise BadParameter("random witnesses are limited to d_A*d_B <= 9")
    rng = np.random.default_rng(seed)
    for _ in range(max_draws):
        sigma = ball_state(random_density(da * db, rng), da, db)
        lam = min_eigenvalue(sigma)
        res = c_max(sigma, opts)
        if res.value - lam <= 2 * eps:
            continue
        c = res.value - rng.uniform(0.0, res.value - lam - eps)
        try:
            w = from_separable(sigma, c, sep_certificate="ball", sigma_cmax=res)
        except (NotAWitness, NotBlockPositive):
            continue
        return CatalogEntry(
            name="random",
            params={"dims": list(dims), "seed": seed, "c": c},
            operator=w.operator,
            optimality_claim=Claim.NONE,
            source="random draw",
            witness=w,
        )
    raise RetryExhausted(f"no witness found in {max_draws} draws for dims {dims}")


def _params(text: str) -> tuple[list[float], dict[str, float]]:
    pos, kw = [], {}
    for item in filter(None, (t.strip() for t in text.split(","))):
        if "=" in item:
            k, v = item.split("=", 1)
            kw[k.strip()] = _number(v)
        else:
            pos.append(_number(item))
    return pos, kw


_PI_RE = re.compile(r"([+-]?[\d.]*)\*?pi(?:/([\d.]+))?")


def _number(text: str) -> float:
    """Parse a float, also accepting multiples of pi such as ``pi/12`` or ``-2pi/3``."""
    t = text.strip().replace(" ", "")
    try:
        return float(t)
    except ValueError:
        pass
    m = _PI_RE.fullmatch(t)
    if not m:
        raise BadParameter(f"cannot parse number {text!r}")
    coef = {"": 1.0, "+": 1.0, "-": -1.0}.get(m.group(1))
    if coef is None:
        coef = float(m.group(1))
    return coef * np.pi / (float(m.group(2)) if m.group(2) else 1.0)


def _special_entry() -> CatalogEntry:
    return special_case()[0]


def _special_state(which: str) -> CatalogEntry:
    rho, sigma = _special_states()
    return CatalogEntry(
        name=f"special-{which}",
        params={},
        operator=sigma if which == "sigma" else rho,
        optimality_claim=Claim.NONE,
        source="two-qubit example (unnormalized state)",
        kind="state",
    )


def identity_entry(da: float = 2, db: float = 2) -> CatalogEntry:
    da, db = int(da), int(db)
    return CatalogEntry(
        name="identity",
        params={"da": da, "db": db},
        operator=BipartiteOperator(np.eye(da * db), da, db),
        optimality_claim=Claim.NONE,
        source="identity operator",
        kind="state",
    )


BUILDERS: dict[str, Callable[..., CatalogEntry]] = {
    "korbicz": korbicz_witness,
    "ha": ha_witness,
    "ha-violation": ha_violation_instance,
    "swap": lambda d=2: swap_witness(int(d)),
    "transpose": transpose_witness,
    "special-case": _special_entry,
    "special-sigma": lambda: _special_state("sigma"),
    "special-rho": lambda: _special_state("rho"),
    "identity": identity_entry,
    "bell-pt": bell_pt_witness,
    "random": lambda da=2, db=2, seed=0: random_witness((int(da), int(db)), int(seed)),
}

DEFAULT_PARAMS = {"korbicz": "0.1,0.4", "ha": "", "swap": "2"}


def lookup(text: str) -> CatalogEntry:
    """Resolve ``NAME[:params]``, e.g. ``korbicz:0.1,0.4`` or ``ha:a=1,b=1,c=0,theta=pi/12``.

    ``ha`` without parameters is the conjecture-violating instance.
    """
    name, _, rest = text.partition(":")
    name = name.strip()
    if name not in BUILDERS:
        raise BadParameter(f"unknown catalog entry {name!r}; choose from {', '.join(sorted(BUILDERS))}")
    if name == "ha" and not rest:
        return ha_violation_instance()
    pos, kw = _params(rest or DEFAULT_PARAMS.get(name, ""))
    try:
        return BUILDERS[name](*pos, **kw)
    except TypeError as exc:
        raise BadParameter(f"bad parameters for {name!r}: {exc}") from None
