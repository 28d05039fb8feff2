"""Exact root-system combinatorics for generalized flag varieties G/P."""
from .catalog import brute_force_submodules, classify_sweep, verify_corpus
from .drops import circle_drop, is_maximal, parabolics_containing, product_rigidity_check
from .parabolic import ParabolicFlag, adjoint_flag, flag_from_dict, make_flag
from .rootsys import RootSystem, RootSystemType, SpecError, build_root_system
from .submodule import (
    EnumerationOverflow,
    Submodule,
    decomposition_count,
    enumerate_submodules,
    growth_vector,
    is_contact,
    is_first_order_nondegenerate,
    is_frobenius,
    is_nontrivial,
    is_submodule,
    saturate,
    semicanonical_ratio,
)

__version__ = "0.1.0"
