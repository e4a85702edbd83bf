"""Mechanical verification of Rogers-Ramanujan-type partition identities.

The package computes both sides of crystal-derived partition identities:
product sides through specialised affine root-system products, and sum sides
through energy functions on perfect-crystal tensor squares, coloured-partition
enumeration, and the associated recursion system.
"""

from .cartan import (AffineCartanData, RootFamily, SpecialisationVector,
                     builtin_cartan, collect_factors, lepowsky_factors,
                     lepowsky_product, positive_root_families,
                     specialise_families)
from .crystal import (CrystalGraph, PSI, builtin_crystal, check_perfect,
                      ground_state_path, level, load_crystal, parse_crystal,
                      principal_exponents, render_crystal, tensor, wt_in_roots)
from .energy import (DifferenceProfile, EnergyInconsistency, EnergyTable,
                     load_profile, parse_profile, path_weight, solve_energy,
                     specialise_energy)
from .identities import REGISTRY, verify_identity
from .partitions import (enumerate_coloured, enumerate_congruence,
                         grounded_series, iter_coloured, partition_count,
                         path_series, refined_count_dl)
from .recursions import (dilated_series, initial_state, advance,
                         refinement_impossible, total_series)
from .series import (ColourPolynomial, ColourSystem, PochhammerFactor,
                     TruncatedSeries, invert, multiply, pochhammer_expand,
                     rr_sum_side, specialise)

__version__ = "0.1.0"
