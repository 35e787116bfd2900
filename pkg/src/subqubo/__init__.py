"""Linear least squares as QUBO, split into translated subranges."""

from .errors import (
    CapacityError,
    ConfigurationError,
    DimensionError,
    DomainError,
    ProblemFileError,
    SubquboError,
)
from .export import export_sampler_script
from .generate import gen_random
from .io import ProblemFile, load_problem, load_qubo, save_problem, save_qubo, save_report
from .problem_model import (
    Assignment,
    BinaryEncoding,
    LinearSystem,
    QuboMatrix,
    SubrangeSpec,
    decode,
    encode,
    locate,
    qubit_index,
    subrange_of,
)
from .qubo_builder import (
    EffectiveRhs,
    build_for_subrange,
    build_qubo,
    effective_rhs,
    target_energy,
    update_linear_for_subrange,
)
from .solvers import AnnealSchedule, SampleRecord, SampleSet, brute_force_solve, energy, simulated_anneal
from .subrange_search import SweepReport, enumerate_subranges, sweep, verify_solution

__version__ = "0.1.0"
