"""List-agreement testing on weighted simplicial complexes.

Exact-arithmetic complexes, permutation-valued cochains, the
representation complex with its empty-triangle coboundary tester, near
covers, the list-agreement and direct-sum testers, and the brute-force
oracles that make their guarantees checkable at desk scale.
"""

from .complex_core import SimplicialComplex, build_complex
from .errors import ListAgreementError
from .generators import complete_complex, spherical_building
from .group_cochains import Cochain, apply_coboundary, is_coboundary, is_cocycle
from .groups import F2, SymmetricGroup
from .list_agreement import LAssignment, list_agreement_test
from .direct_sum import FaceFunction, direct_sum_test, eval_direct_sum
from .representation import (
    RepresentationComplex,
    build_representation,
    empty_triangle_test,
)

__all__ = [
    "Cochain",
    "F2",
    "FaceFunction",
    "LAssignment",
    "ListAgreementError",
    "RepresentationComplex",
    "SimplicialComplex",
    "SymmetricGroup",
    "apply_coboundary",
    "build_complex",
    "build_representation",
    "complete_complex",
    "direct_sum_test",
    "empty_triangle_test",
    "eval_direct_sum",
    "is_coboundary",
    "is_cocycle",
    "list_agreement_test",
    "spherical_building",
]

__version__ = "0.1.0"
