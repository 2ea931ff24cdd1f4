"""Entanglement witnesses, their structural physical approximations, and EB tests."""
from .errors import *  # noqa: F401,F403
from .linalg import (
    BipartiteOperator,
    Spectrum,
    expectation,
    hermitian_eig,
    identity,
    kron,
    min_eigenvalue,
    partial_trace,
    partial_transpose,
)
from .witness import (
    CMaxResult,
    ProductVector,
    QubitAngles,
    SeeSawOptions,
    Witness,
    c_max,
    decompose_form,
    detects,
    from_separable,
    make_finer,
    product_expectation_closed_form,
    validate_witness,
    weak_optimality,
)
from .spa import (
    Claim,
    SeparabilityVerdict,
    SpaReport,
    conjecture_check,
    pt_witness,
    separability_verdict,
    spa_of_state_form,
    spa_witness,
    theorem3_check,
    theorem4_check,
)
from .channels import (
    ChoiMatrix,
    apply_map,
    choi_of_witness,
    depolarize,
    is_entanglement_breaking,
    spa_map,
    witness_of_choi,
)

__version__ = "0.1.0"
