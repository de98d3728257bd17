from spectral.solver.enums import MethodId, Termination
from spectral.solver.objects import (
    RESULT_COLUMNS,
    RESULT_SCHEMA,
    ResultRow,
    RunConfig,
    RunTrace,
    TraceRecord,
    results_frame,
    write_trace_csv,
)
from spectral.solver.baselines import (
    BaselineState,
    baseline_adaptive,
    baseline_alternate_or_cyclic,
    baseline_yuan,
    yuan_stepsize,
)
from spectral.solver.methods import (
    DEFAULT_PARAMETERS,
    FamilySequence,
    StepContext,
    StepsizeMethod,
    first_stepsize,
    make_method,
    resolve_parameters,
)
from spectral.solver.driver import run_gradient_method
