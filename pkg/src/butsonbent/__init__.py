"""Self-dual bent sequences of Butson Hadamard matrices and the geometry of
their codes."""

from .bent_search import BentSolution, census, eigenspace_search, exhaustive_search, search, verify_bent
from .butson import ButsonMatrix, MonomialMatrix, build_code, fourier_matrix, group_invariant_matrix, kronecker, verify_butson
from .cyclotomic import CycElt
from .exceptions import BudgetExceeded, ButsonError
from .kernels import BACKEND

__all__ = [
    "BACKEND", "BentSolution", "BudgetExceeded", "ButsonError", "ButsonMatrix", "CycElt",
    "MonomialMatrix", "build_code", "census", "eigenspace_search", "exhaustive_search",
    "fourier_matrix", "group_invariant_matrix", "kronecker", "search", "verify_bent", "verify_butson",
]
