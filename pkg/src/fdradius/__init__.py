"""Joint (f, delta)-numerical radii of operator tuples."""

from .engine import (Engine, EngineConfig, FeasibleRegion, RadiusEstimate, delta_radius_single, f_delta_norm,
                     f_delta_radius, f_norm, radius_profile, single_omega_exact)
from .errors import (EmptyFeasibleSet, FdrError, GaugeUnvalidated, HypothesisUnmet, InvalidSpec, NegativeArgument,
                     NonFinite, NotPSD, ShapeMismatch)
from .gauge import GaugeFunction, custom, identity, parse_gauge, power
from .generators import EnsembleSpec, SectorParams, generate
from .kernels import BACKEND
from .suite import CheckOutcome, SuiteReport, check, run_suite
from .tuples import OperatorTuple, joint_norm, load_tuple, pauli_tuple, r2_example_tuple

__version__ = "0.1.0"
