"""Iterated-averaging dynamics toolkit.

Water-tank equilibration strategies and their bounds, approximation of
permutations by composed partition-averaging operators, and Robin Hood /
majorization reachability tooling. The heavy lifting lives in the C++
extension module; this package re-exports its public surface.
"""

from ._core import (
    apply_robin_hood,
    approximate_permutation,
    brute_force_optimal,
    conjecture_fit,
    default_window_width,
    greedy_strategy,
    heat_exchanger,
    involution_decompose,
    lemma_bound,
    majorizes,
    reachable_hull,
    residual_sweep,
    robin_hood_matrix,
    sample_reachable,
    simulate_full_empty,
    simulate_full_empty_exact,
    theorem_bound_check,
    total_red_bound,
    verify_lemma_bounds,
)

__all__ = [
    "apply_robin_hood",
    "approximate_permutation",
    "brute_force_optimal",
    "conjecture_fit",
    "default_window_width",
    "greedy_strategy",
    "heat_exchanger",
    "involution_decompose",
    "lemma_bound",
    "majorizes",
    "reachable_hull",
    "residual_sweep",
    "robin_hood_matrix",
    "sample_reachable",
    "simulate_full_empty",
    "simulate_full_empty_exact",
    "theorem_bound_check",
    "total_red_bound",
    "verify_lemma_bounds",
]
