"""Executable check of the cutting characterisation of trivial first cohomology.

A closed connected manifold has H^1(M; Z) = 0 exactly when every connected
open set with disconnected boundary disconnects M.  This package decides
both sides on finite simplicial complexes and emits checkable certificates.
"""
from .certificate import WitnessCertificate, load_certificate, verify_certificate
from .circle_map import build_circle_map, certify_nontrivial, thicken
from .complex import (SimplicialComplex, barycentric_subdivision, build_complex,
                      connected_components, euler_characteristic, parse_sc, read_sc, validate)
from .domains import (Domain, boundary_report, cut_report, enumerate_candidates, is_cutting,
                      theorem_check)
from .homology import (IntegerCochain, boundary_matrix, cocycle_basis, homology_summary,
                       is_coboundary, pairing, smith_normal_form)
from .manifolds import GeneratorSpec, generate
from .witness import collar, construct_witness, dual_hypersurface

__all__ = [
    "Domain", "GeneratorSpec", "IntegerCochain", "SimplicialComplex", "WitnessCertificate",
    "barycentric_subdivision", "boundary_matrix", "boundary_report", "build_circle_map",
    "build_complex", "certify_nontrivial", "cocycle_basis", "collar", "connected_components",
    "construct_witness", "cut_report", "dual_hypersurface", "enumerate_candidates",
    "euler_characteristic", "generate", "homology_summary", "is_coboundary", "is_cutting",
    "load_certificate", "pairing", "parse_sc", "read_sc", "smith_normal_form", "theorem_check",
    "thicken", "validate", "verify_certificate",
]
