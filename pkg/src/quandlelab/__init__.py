"""Workbench for self-distributive structures: finite tables, topologies on
them, parametric families with isomorphism certificates, polynomial and
smooth examples, and braid-closure coloring counts."""

from .affine import (CertCheck, LineDecision, NonIsoCertificate, affine_op,
                     circle_op, decide_iso_circle, decide_iso_diag,
                     decide_iso_line, rational_between, validate_certificate)
from .coloring import (BraidWord, alexander_coloring_count, braid_action,
                       braid_text, closure_components, conjugate,
                       count_colorings, parse_braid, stabilize)
from .errors import (GuardExceeded, IndeterminatePrecision, InputError,
                     ValidationReport)
from .geometry import (SampledAxiomReport, check_axioms_sampled, grassmann_op,
                       orthonormal_frame, projector, random_frame,
                       rotation_op, run_named_check, sphere_op, sphere_point,
                       subspace_distance, vector_distance)
from .groups import (GroupTable, conj_quandle, core_quandle, coset_quandle,
                     cyclic_group, dihedral_group, group_automorphisms,
                     quaternion_group, realize_from_stabilizer,
                     small_group_catalog, twist_quandle)
from .polynomials import (Classification, DegreeStats, DistributivityReport,
                          IntervalVerdict, Poly2, classify_distributive,
                          degree_stats, interval_quandle_verdict,
                          is_distributive, parse_poly)
from .quandles import (FiniteQuandle, PermGroup, alexander_mod,
                       automorphism_group, canonical_form, dihedral_quandle,
                       enumerate_quandles, inner_group, is_connected,
                       is_homogeneous, is_isomorphic, isomorphisms, orbits,
                       product_quandle, trivial_quandle, validate_quandle)
from .topology import (FiniteSpace, TopQuandle, chain_topology,
                       discrete_topology, enumerate_top_quandles,
                       enumerate_topologies, homeomorphisms,
                       indiscrete_topology, is_continuous_op,
                       is_topological_quandle, path_components,
                       space_from_preorder, top_quandle_isomorphic,
                       validate_topology)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
