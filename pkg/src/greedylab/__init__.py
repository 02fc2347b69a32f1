"""Greedy approximation machinery on concrete quasi-Banach sequence spaces."""

from .classes import ClassNorms, ClassParams, chain_check, class_norm, class_norms, generate_vector, ratio_sweep
from .democracy import ConstantEstimate, DemocracyTable, constant_estimate, democracy_table
from .errors import ErrorProfile, error_profile, gamma, sigma, sigma_tilde, theta
from .greedy import SignPattern, greedy_ordering, greedy_sets, nsg
from .lorentz import LorentzParams, dyadic_lorentz_norm, lorentz_norm
from .spaces import InterleavedSum, LorentzDSpace, LpSpace, SparseVector, SummingC0, norm, parse_space
from .verify import (
    VerificationReport,
    check_ap_inequality,
    check_bernstein,
    check_equivalence,
    check_jackson,
    oracle_sigma_bruteforce,
    witness_nondemocracy,
)
from .weights import Weight, classify_weight, parse_weight, regularity_indices

__version__ = "0.1.0"

__all__ = [
    "ClassNorms",
    "ClassParams",
    "ConstantEstimate",
    "DemocracyTable",
    "ErrorProfile",
    "InterleavedSum",
    "LorentzDSpace",
    "LorentzParams",
    "LpSpace",
    "SignPattern",
    "SparseVector",
    "SummingC0",
    "VerificationReport",
    "Weight",
    "chain_check",
    "check_ap_inequality",
    "check_bernstein",
    "check_equivalence",
    "check_jackson",
    "class_norm",
    "class_norms",
    "classify_weight",
    "constant_estimate",
    "democracy_table",
    "dyadic_lorentz_norm",
    "error_profile",
    "gamma",
    "generate_vector",
    "greedy_ordering",
    "greedy_sets",
    "lorentz_norm",
    "norm",
    "nsg",
    "oracle_sigma_bruteforce",
    "parse_space",
    "parse_weight",
    "ratio_sweep",
    "regularity_indices",
    "sigma",
    "sigma_tilde",
    "theta",
    "witness_nondemocracy",
]
