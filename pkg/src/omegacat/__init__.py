"""Finite strict omega-categories as explicit cell complexes."""
from .core import Category, build
from .errors import (AmbiguousLift, DegreeMismatch, HypothesisNotMet, LiftNotFound,
                     MalformedInput, NotComposable, OmegaCatError, QuotientNotWellDefined,
                     RestrictionMismatch, SearchLimitExceeded, UnsupportedDepth)
from .report import ValidationReport
from .validate import validate, validate_globular, validate_strict
from .equivalence import EquivalenceSolver, classify_arrow, decide_equiv, equiv_degree
from .functors import FunctorData, ModificationData, check_functor, check_modification
from .presheaf import PresheafData, check_representable, hom_presheaf
from .limits import DiagramData, GraphPresentation, find_strict_limit, check_weak_limit
from .adjunction import AdjunctionData, check_strict_adjunction, hom_iso_from_unit_counit
from .duality import (DualityInput, check_initial_lifting, search_comparison,
                      synthesize_dual_adjunction)
from .homotopy import formal_homotopy_group

__version__ = "0.1.0"
