"""Modified Macdonald polynomials from HHL fillings, and an exhaustive check
of their factorization when t is a primitive root of unity."""

from .bijections import (
    SplitFilling,
    TailShape,
    cond_xAx,
    cond_xXxX,
    pi_star,
    pi_star_inverse,
    stats_of_split,
    tau,
    tau_trace,
    verify_involution,
    verify_key_lemma,
    verify_lemmas,
    verify_theorem,
)
from .combinatorics import Filling, conjugate, evaluation, inv, maj, partition
from .engine import (
    BudgetExceeded,
    ShapeSpec,
    check_conjugation_symmetry,
    check_factorization,
    check_unit_specialization,
    macdonald_polynomial,
    specialize_expansion,
)
from .polynomials import CycElement, MonomialExpansion, QTPoly, cyclotomic, specialize_t
from .report import Verdict

__version__ = "0.1.0"
