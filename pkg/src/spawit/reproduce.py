"""Recompute every reference number of the SPA / witness study from first principles."""
from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Any, Callable, Iterable, Optional

import numpy as np

from . import catalog
from .channels import choi_of_witness, is_entanglement_breaking, spa_map
from .linalg import expectation, min_eigenvalue, partial_transpose
from .spa import Claim, conjecture_check, noise_from_shift, spa_witness, theorem4_check
from .witness import QubitAngles, SeeSawOptions, c_max, from_separable, weak_optimality

KORBICZ_A = (0.05, 0.1, 0.25, 0.5, 1.0)
KORBICZ_GRID = tuple(round(0.1 * k, 1) for k in range(1, 11))


@dataclass
class Row:
    group: str
    quantity: str
    expected: Any
    computed: Any
    tol: Optional[float] = None

    @property
    def delta(self) -> Optional[float]:
        if self.tol is None:
            return None
        return abs(float(self.computed) - float(self.expected))

    @property
    def passed(self) -> bool:
        if self.tol is None:
            return self.computed == self.expected
        return self.delta <= self.tol

    def asdict(self) -> dict:
        d = asdict(self)
        d.update(delta=self.delta, passed=self.passed)
        return d


def special_case_rows(opts: SeeSawOptions) -> Iterable[Row]:
    entry, rho, sigma = catalog.special_case()
    yield Row("special-case", "lambda_min(rho)", 0.0, min_eigenvalue(rho), 1e-12)
    yield Row("special-case", "lambda_min(sigma)", 0.3, min_eigenvalue(sigma), 1e-12)
    yield Row("special-case", "c_max(rho)", 0.1, c_max(rho, opts).value, 1e-4)
    yield Row("special-case", "c_max(sigma)", 0.4, c_max(sigma, opts).value, 1e-4)
    same = entry.operator.allclose(catalog.korbicz_witness(0.1, 0.4).operator)
    yield Row("special-case", "W equals korbicz(0.1, 0.4)", True, same)
    w = from_separable(sigma, 0.4, opts=opts)
    yield Row("special-case", "sigma - 0.4 I weakly optimal", True, weak_optimality(w)[0])
    w2 = from_separable(sigma, 0.35, opts=opts)
    yield Row("special-case", "sigma - 0.35 I weakly optimal", False, weak_optimality(w2)[0])
    t4 = theorem4_check(w, opts)
    yield Row("special-case", "SPA(sigma - 0.4 I)", "Entangled", t4.spa_w.outcome.value)
    yield Row("special-case", "SPA((sigma - 0.4 I)^Gamma)", "Separable", t4.spa_wpt.outcome.value)


def korbicz_rows(opts: SeeSawOptions) -> Iterable[Row]:
    for a in KORBICZ_A:
        w = catalog.korbicz_witness(a, 0.4).as_witness(opts)
        yield Row("korbicz", f"noise_p(a={a})", 4 * a / (4 * a + 1), spa_witness(w).noise_p, 1e-9)
    for b in KORBICZ_A:
        op = catalog.korbicz_witness(0.4, b).operator
        p_npt = noise_from_shift(-min_eigenvalue(partial_transpose(op)), op.dim)
        yield Row("korbicz", f"NPT threshold p(b={b})", 4 * b / (4 * b + 1), p_npt, 1e-9)
    mismatches = 0
    for a in KORBICZ_GRID:
        for b in KORBICZ_GRID:
            w = catalog.korbicz_witness(a, b).as_witness(opts)
            mismatches += spa_witness(w).verdict.entangled != (b > a)
    yield Row("korbicz", "EB dichotomy mismatches on 10x10 grid", 0, mismatches)
    vec = QubitAngles(np.pi / 2, np.pi / 2, np.pi, 0.0).product_vector().vector
    yield Row("korbicz", "<mu nu|W(0.1,0.4)|mu nu> at (|0>-|1>)(|0>+|1>)/2", 0.0,
              expectation(catalog.korbicz_witness(0.1, 0.4).operator, vec), 1e-12)
    for a, b in [(0.1, 0.4), (0.4, 0.1)]:
        t4 = theorem4_check(catalog.korbicz_witness(a, b).as_witness(opts), opts)
        expect_w = "Entangled" if b > a else "Separable"
        expect_pt = "Separable" if b > a else "Entangled"
        yield Row("korbicz", f"SPA(W({a},{b}))", expect_w, t4.spa_w.outcome.value)
        yield Row("korbicz", f"SPA(W({a},{b})^Gamma)", expect_pt, t4.spa_wpt.outcome.value)


def ha_rows(opts: SeeSawOptions) -> Iterable[Row]:
    entry = catalog.ha_violation_instance()
    yield Row("ha", "lambda_min(W)", -0.7286, min_eigenvalue(entry.operator), 5e-5)
    yield Row("ha", "lambda_min(W^Gamma)", -0.6440, min_eigenvalue(partial_transpose(entry.operator)), 5e-5)
    report = conjecture_check(entry.as_witness(opts), Claim.OPTIMAL_NONDECOMPOSABLE)
    rules = [c.rule for c in report.certificates]
    yield Row("ha", "violation certificate", "corollary10", rules[0] if rules else None)
    yield Row("ha", "violating side", "W^Gamma", report.certificates[0].side if rules else None)


def transpose_rows(opts: SeeSawOptions) -> Iterable[Row]:
    entry = catalog.transpose_witness()
    res = spa_map(choi_of_witness(entry.operator))
    yield Row("transpose", "map-level p_star", 2 / 3, res.p_star, 1e-12)
    yield Row("transpose", "SPA Choi state", "Separable", is_entanglement_breaking(res.choi).outcome.value)
    report = conjecture_check(entry.as_witness(opts), Claim.OPTIMAL)
    yield Row("transpose", "conjecture violated", False, report.violates)
    yield Row("transpose", "swap state threshold (d=2)", 2 / 3, catalog.swap_threshold(2), 1e-15)


GROUPS: dict[str, Callable[[SeeSawOptions], Iterable[Row]]] = {
    "special-case": special_case_rows,
    "korbicz": korbicz_rows,
    "ha": ha_rows,
    "transpose": transpose_rows,
}


def run(filter_: str | None = None, opts: SeeSawOptions | None = None) -> list[Row]:
    opts = opts or SeeSawOptions()
    rows = []
    for name, fn in GROUPS.items():
        if filter_ and filter_ not in name:
            continue
        rows.extend(fn(opts))
    return rows


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.10g}"
    return str(x)


def format_table(rows: list[Row]) -> str:
    header = ("group", "quantity", "expected", "computed", "|delta|", "status")
    body = [
        (r.group, r.quantity, _fmt(r.expected), _fmt(r.computed),
         "" if r.delta is None else f"{r.delta:.2e}", "pass" if r.passed else "FAIL")
        for r in rows
    ]
    widths = [max(len(h), *(len(b[i]) for b in body)) if body else len(h) for i, h in enumerate(header)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(c.ljust(w) for c, w in zip(b, widths)) for b in body]
    return "\n".join(lines)
