"""Exact computation of versal multi-pointed deformations of quiver
representations and their base algebras."""

from .linalg import Matrix, PrimeField, QQ, Rationals
from .quiver import (Arrow, Morphism, Presentation, Quiver, Relation,
                     Representation, direct_sum, is_isomorphic, kernel_of,
                     validate)
from .homext import (common_extension, ext1_space, extension_of, hom_space,
                     pullback_class, universal_extension)
from .tower import (Collection, CustomStep, check_simple_collection,
                    random_maximal_sequence, run_custom_sequence, run_tower,
                    verify_versality)
from .artin import (AlgebraModule, PointedAlgebra, dimension_signature,
                    duality_check, end_algebra, flatness_check,
                    socle_and_gorenstein, spherical_permutation,
                    verify_pointed_artin)
from .problems import ProblemFile, load_problem, parse_problem, problem_json

__version__ = "0.1.0"
