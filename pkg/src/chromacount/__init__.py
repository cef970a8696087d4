"""chromacount: exact enumeration of chromatic polynomials, list color
functions, and DP color functions on graphs of at most 31 vertices."""

from .graph import (Graph, FamilyParseError, parse_family_spec, build_family,
                    build_family_text, build_theta, join, add_pendant,
                    add_pendant_path, from_edges, from_graph6, to_graph6,
                    read_graph6_lines, core_of, core_class, CoreClass,
                    bipartition, chromatic_number, theta_paths,
                    leaf_deletion_order, induced_subgraph)
from .counting import (ListAssignment, count_list_colorings,
                       count_proper_colorings, count_proper_colorings_dc,
                       closed_form, cycle_poly, tree_poly, k2n_poly,
                       theta222k_poly, falling_factorial,
                       UnsupportedFamilyError)
from .search import (SearchReport, SearchBudgetError, list_color_function,
                     enumerate_canonical_assignments, random_m_assignment,
                     is_m_choosable, list_chromatic_number, degeneracy,
                     exact_feasible, nu_tau, NuTauReport, PointReport,
                     is_weakly_ecc, is_ecc, EccDecision, classify_bipartite,
                     ClassifyResult, DEFAULT_BUDGET)
from .dp import (Cover, CoverError, CoverSearchReport, identity_cover,
                 count_dp_colorings, dp_color_function, theta_dp_formula,
                 cover_from_list_assignment, complete_cover)
from .witness import (theta_witness_assignment, k224_witness,
                      pendant_extension_witness, ThetaDecomposition,
                      theta_decomposition, LemmaReport, HypothesisError,
                      validate_lemma, random_instance, run_lemma_trials,
                      run_lemma_suite, LEMMA_IDS)

__version__ = "0.1.0"
