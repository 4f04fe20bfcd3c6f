"""Numerics for model spaces K_theta: inner functions, kernels, Clark measures,
Ahern-Clark diagnostics, kernel-system geometry and localization probes."""
from ._accel import apply_thread_cap, backend_name
from .boundary import ConvergenceReport, ac_test, ac_test_clark
from .clark import ClarkMeasure, clark_atoms, clark_inner_product, clark_transform, lattice_measure
from .errors import (ConfigError, DomainError, ExtractionError, InputError, MslabError,
                     NumericalError, PreconditionError, RegularityError, TruncationError)
from .generators import REGISTRY as TAIL_MODELS
from .geometry import (Combination, KernelSystem, biorthogonal_norms, build_system,
                       geometry_report, greedy_riesz_extract, riesz_bounds, umnr_classify)
from .inner import (INF, CanonicalProductSpec, DomainTag, InnerFunctionSpec, blaschke,
                    eval_canonical_product, eval_derivative, eval_inner)
from .kernel_space import (boundary_kernel_limit, gram_closed_form, kernel_eval, kernel_norm,
                           make_kernel)
from .localization import (DiscAtomFamily, LatticeMeasureSpec, count_zeros_in_region,
                           dominating_lacunary_product, exp_moment_test,
                           orthopoly_divergence_diagnostic, taylor_vanishing_probe)
from .report import Bundle, emit_report
from .transfer import (Generalized, StolzDisc, StolzHalfPlane, map_point, region_contains,
                       transfer_clark, transfer_inner)
from .workbench import ScenarioConfig, run_scenario

__version__ = "0.1.0"
