"""Train-track maps of free group automorphisms and the self-similar structure
of their limit sets: transition matrices, prefix-suffix automata, invariant
measures and Hausdorff dimension."""

from .words import (BasisMorphism, Letter, Word, apply_morphism, iterate_morphism,
                    reduce_word, verify_inverse_pair)
from .graphs import (Graph, GraphMap, derivative_map, is_irreducible_representative,
                     is_train_track, realizes, rose_of)
from .spectral import PFData, char_poly, is_primitive, pf_eigenpair, transition_matrix
from .psa import (EPath, PrefixSuffixAutomaton, build_psa, build_unoriented_psa,
                  cylinder_weight, enumerate_paths, loops_up_to, positive_part)
from .lamination import decompose_occurrences, iterate_edge, verify_loop_realization
from .fractal import (DimensionReport, IntervalUnion, PointCloud, box_counting_dimension,
                      build_address_tree, hausdorff_dimension, rauzy_points)
from .itm import (ITMConfig, bk_config, itm_apply, itm_dimension_estimate,
                  itm_forward_intervals, itm_itinerary, solve_alpha)
from .specfile import AutoSpec, load_spec, parse_spec

__version__ = "0.1.0"
