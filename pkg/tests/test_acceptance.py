"""Exit criteria, one test per criterion; each also records a PASS/FAIL summary line."""
import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from spawit import catalog, io
from spawit.channels import choi_of_witness, is_entanglement_breaking, spa_map, witness_of_choi
from spawit.linalg import (
    BipartiteOperator,
    expectation,
    hermitian_eig,
    min_eigenvalue,
    partial_transpose,
    random_density,
    random_hermitian,
)
from spawit.spa import Claim, conjecture_check, spa_witness, theorem3_check, theorem4_check
from spawit.witness import (
    QubitAngles,
    SeeSawOptions,
    c_max,
    detects,
    from_separable,
    product_expectation_closed_form,
)

pytestmark = pytest.mark.acceptance


def record(number, title, ok, detail=""):
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {number:>3}. {title}" + (f"  ({detail})" if detail else ""))
    return ok


@pytest.fixture(scope="session")
def sample():
    """500 random witnesses per dimension pair, shared by several criteria."""
    return {dims: [catalog.random_witness(dims, seed).witness for seed in range(500)] for dims in [(2, 2), (2, 3)]}


def test_01_korbicz_spa_threshold():
    worst = 0.0
    for a in (0.05, 0.1, 0.25, 0.5, 1.0):
        p = spa_witness(catalog.korbicz_witness(a, 0.4).as_witness()).noise_p
        worst = max(worst, abs(p - 4 * a / (4 * a + 1)))
    assert record(1, "Korbicz SPA threshold noise_p = 4a/(4a+1)", worst <= 1e-9, f"max |delta| {worst:.1e}")


def test_02_korbicz_eb_dichotomy():
    grid = [round(0.1 * k, 1) for k in range(1, 11)]
    bad = [(a, b) for a in grid for b in grid
           if spa_witness(catalog.korbicz_witness(a, b).as_witness()).verdict.entangled != (b > a)]
    assert record(2, "Korbicz EB dichotomy on the 10x10 grid", not bad, f"{len(bad)} mismatches of 100")


def test_03_ha_spectra_and_certificate(ha):
    lw = min_eigenvalue(ha.operator)
    lpt = min_eigenvalue(partial_transpose(ha.operator))
    report = conjecture_check(ha.as_witness(), Claim.OPTIMAL_NONDECOMPOSABLE)
    rules = [c.rule for c in report.certificates]
    ok = abs(lw + 0.7286) <= 5e-5 and abs(lpt + 0.6440) <= 5e-5 and "corollary10" in rules
    assert record(3, "Ha witness spectra and nondecomposable-witness violation certificate", ok,
                  f"lambda_W {lw:.5f}, lambda_WGamma {lpt:.5f}, certificates {rules}")


def test_04_special_case(special):
    _, rho, sigma = special
    checks = {
        "lambda(rho)": abs(min_eigenvalue(rho)) <= 1e-12,
        "lambda(sigma)": abs(min_eigenvalue(sigma) - 0.3) <= 1e-12,
        "cmax(rho)": abs(c_max(rho).value - 0.1) <= 1e-4,
        "cmax(sigma)": abs(c_max(sigma).value - 0.4) <= 1e-4,
    }
    t4 = theorem4_check(from_separable(sigma, 0.4))
    checks["SPA(W) entangled"] = t4.spa_w.entangled
    checks["SPA(W^Gamma) separable"] = t4.spa_wpt is not None and t4.spa_wpt.separable
    failed = [k for k, v in checks.items() if not v]
    assert record(4, "two-qubit worked example", not failed, "failed: " + ", ".join(failed) if failed else "")


def test_05_transpose_map_eb():
    res = spa_map(choi_of_witness(catalog.transpose_witness().operator))
    verdict = is_entanglement_breaking(res.choi)
    ok = verdict.separable and abs(res.p_star - 2 / 3) <= 1e-12
    assert record(5, "transpose map SPA is entanglement breaking", ok,
                  f"p_star {res.p_star:.15f}, {verdict.outcome.value}")


def test_06_spa_is_independent_of_c(sample):
    worst, count = 0.0, 0
    for dims in [(2, 2), (2, 3)]:
        for w in sample[dims][:200]:
            sigma = w.sigma
            lam = min_eigenvalue(sigma)
            cmax = w.c + w.validation.min_product
            target = sigma.matrix - lam * np.eye(sigma.dim)
            other = from_separable(sigma, lam + 0.5 * (cmax - lam), sigma_cmax=c_max(sigma))
            for ww in (w, other):
                worst = max(worst, np.abs(spa_witness(ww).approximated.matrix - target).max())
                count += 1
    assert record(6, "SPA of sigma - cI is sigma - lambda_min(sigma) I for every c", worst <= 1e-10,
                  f"{count} witnesses, max |delta| {worst:.1e}")


def test_07_spa_entangled_iff_pt_more_negative(sample):
    bad = 0
    for ws in sample.values():
        for w in ws:
            bad += spa_witness(w).verdict.entangled != theorem3_check(w).violating
    assert record(7, "SPA entangled iff lambda_min(W^Gamma) < lambda_min(W)", bad == 0,
                  f"{bad} counterexamples in 1000")


def test_08_one_of_two_spas_separable(sample):
    bad, used = 0, 0
    for ws in sample.values():
        for w in ws:
            t4 = theorem4_check(w)
            if t4.pt_positive:
                continue
            used += 1
            bad += not t4.holds
    assert record(8, "SPA(W) or SPA(W^Gamma) separable when both are witnesses", bad == 0 and used > 0,
                  f"{bad} failures in {used} eligible")


def test_09a_closed_form_matches_numeric():
    rng = np.random.default_rng(9)
    a, b = 0.3, 0.7
    w = catalog.korbicz_witness(a, b).operator
    worst = 0.0
    for _ in range(1000):
        ang = QubitAngles(*rng.uniform(0, np.pi, 2), *rng.uniform(-np.pi, np.pi, 2))
        numeric = expectation(w, ang.product_vector().vector)
        worst = max(worst, abs(product_expectation_closed_form(a, b, ang) - numeric))
    assert record("9a", "closed-form product expectation matches numerics", worst <= 1e-12,
                  f"1000 angle tuples, max |delta| {worst:.1e}")


def test_09b_vanishing_point_at_south_poles():
    # evaluated literally at theta1 = theta2 = pi, t1 - t2 = pi
    a, b = 0.1, 0.4
    value = product_expectation_closed_form(a, b, QubitAngles(np.pi, np.pi, np.pi, 0.0))
    numeric = expectation(catalog.korbicz_witness(a, b).operator,
                          QubitAngles(np.pi, np.pi, np.pi, 0.0).product_vector().vector)
    ok = abs(value) <= 1e-14
    record("9b", "product expectation vanishes at theta1 = theta2 = pi, t1 - t2 = pi", ok,
           f"closed form {value:.3g}, numeric {numeric:.3g}; the product vector there is |11>, "
           f"whose expectation is a; the zero lies at theta1 = theta2 = pi/2")
    assert ok, f"closed form gives {value!r} (= a), not 0"


def test_10_bell_pt_dominates_korbicz():
    rng = np.random.default_rng(10)
    q = catalog.bell_pt_witness().operator
    states = [BipartiteOperator(random_density(4, rng, rank=1 + k % 4), 2, 2) for k in range(1000)]
    summary, bad = [], 0
    for a, b in [(0.1, 0.4), (0.4, 0.1)]:
        w = catalog.korbicz_witness(a, b).operator
        hits = [s for s in states if detects(w, s)[0]]
        bad += sum(not detects(q, s)[0] for s in hits)
        summary.append(f"W({a},{b}) detects {len(hits)}")
    assert record(10, "bell-pt witness detects everything the Korbicz witnesses detect", bad == 0,
                  f"{', '.join(summary)}, {bad} missed")


def test_11_infrastructure():
    rng = np.random.default_rng(11)
    eig_err = 0.0
    for n in range(2, 17):
        for method in ("lapack", "jacobi"):
            h = random_hermitian(n, rng)
            s = hermitian_eig(h, method=method)
            v = s.eigenvectors
            eig_err = max(eig_err, np.linalg.norm(v @ np.diag(s.eigenvalues) @ v.conj().T - h) / np.linalg.norm(h))
    choi_exact = True
    file_exact = True
    for dims in [(2, 2), (2, 3), (3, 3)]:
        for _ in range(20):
            o = BipartiteOperator(random_hermitian(dims[0] * dims[1], rng), *dims)
            choi_exact &= np.array_equal(witness_of_choi(choi_of_witness(o)).matrix, o.matrix)
            file_exact &= np.array_equal(io.loads(io.OperatorFile.from_operator(o).dumps()).matrix, o.matrix)
    monotone = True
    opts = SeeSawOptions(restarts=16, record_trace=True)
    for dims in [(2, 2), (2, 3), (3, 3)]:
        for _ in range(10):
            t = c_max(BipartiteOperator(random_hermitian(dims[0] * dims[1], rng), *dims), opts).trace
            monotone &= bool(np.all(np.diff(t, axis=0) <= 1e-12))
    ok = eig_err <= 1e-8 and choi_exact and file_exact and monotone
    assert record(11, "infrastructure: eigensolver, Choi and file round trips, see-saw monotonicity", ok,
                  f"eig rel err {eig_err:.1e}, choi exact {choi_exact}, file exact {file_exact}, monotone {monotone}")
