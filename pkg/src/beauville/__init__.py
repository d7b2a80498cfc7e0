"""Verification toolkit for strongly real Beauville p-groups.

Exact arithmetic for truncated power-series automorphisms over F_p
(Nottingham quotients), Todd-Coxeter coset enumeration, a finite-group
engine with element tables and defining words, maximal-class cyclotomic
groups, and brute-force certification of Beauville structures on the
lower-central quotients of the free product of two cyclic groups of odd
prime order.
"""

from ._version import __version__
from .coset import (CosetTable, EnumerationLimits, LimitExceeded,
                    enumerate_cosets, validate_table)
from .fpseries import (INFINITE, TruncSeries, commutator, compose, inv_sqrt,
                       inverse, lcs_index, nottingham_generators, power)
from .groups import (CosetGroup, FiniteGroup, GroupTooLarge, Hom,
                     HomomorphismError, Perm, automorphism_from_images,
                     cayley_elements, centralizer, characteristic_subgroup,
                     commutator_elt, conjugate, element_order, exponent,
                     frattini_subgroup, group_prime, hom_from_images,
                     lower_central_series, normal_closure, omega_subgroup,
                     pow_elt, subgroup_closure, subgroup_exponent)
from .maxclass import (CyclotomicRing, MaxClassElement, construct_P, layer,
                       psi_to_P, uniserial_indices, verify_layer_orders)
from .nottingham import (commutator_depth_suite, depth_filter, echelon_pivots,
                         generator_order_check, quotient_order,
                         series_quotient_group, verify_generation,
                         verify_lcs_filter)
from .structures import (BeauvilleStructure, Certificate, Verdict,
                         WitnessSearchError, abelian_beauville_search,
                         abelian_group, commutator_image_set,
                         conjugate_cyclic_union, is_beauville_structure,
                         noncovering_check, recheck_certificate, sigma_set,
                         strongly_real_check, verify_main_theorem,
                         witness_search, write_certificate)
from .words import (ParseError, Presentation, augmented_gamma_presentation,
                    expand_commutator, free_reduce,
                    gamma_quotient_presentation, inversion_images,
                    parse_presentation, print_presentation, str_to_word,
                    winv, wmul, word_to_str, wpow)

__all__ = [name for name in dir() if not name.startswith("_")]
