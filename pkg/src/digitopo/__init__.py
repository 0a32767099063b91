"""Coincidence, fixed-point and common-fixed-point invariants of finite digital images."""

from .budget import BudgetExhaustedError, SearchBudget, SearchStats
from .catalog import (CatalogEntry, STANDARD_KEYS, catalog_get, cycle_image,
                      rotation, standard_entries)
from .homotopy import (HomotopyClass, are_homotopic, class_fixed_stats,
                       homotopy_class, is_contractible, is_deformation_retract,
                       is_nullhomotopic, is_rigid)
from .image import (DigitalImage, InvalidImageError, LatticeSpec, build_image,
                    digital_interval, kappa_count)
from .invariants import (coincidence_spectrum, common_fixed_spectrum,
                         divergence_degree, fixed_point_spectrum, has_FPP,
                         homotopy_coincidence_spectrum,
                         homotopy_common_fixed_spectrum, min_numbers,
                         restricted_divergence)
from .iso import Isomorphism, are_isomorphic
from .maps import (DigitalMap, MapMismatchError, coincidence_count,
                   coincidence_set, compose, continuity_oracle,
                   fixed_point_set, is_continuous, pointwise_close)
from .search import (MapStream, PartialConstraint, count_continuous_maps,
                     enumerate_assignments, enumerate_continuous_maps,
                     find_fixed_point_free, find_retraction,
                     min_difference_pair)
from .spectrum import Spectrum
from .suite import CheckResult, SuiteReport, property_suite

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
