from spectral.analysis.recurrence import (
    THETA,
    TwoDimState,
    XiRecord,
    XiReport,
    h_derivative,
    h_eval,
    h_log_eval,
    log_gradient_norms,
    log_gradient_trajectory,
    log_recurrence_sequence,
    meets_growth_hypothesis,
    recurrence_q_step,
    recurrence_sequence,
    xi_sequence,
)
from spectral.analysis.diagnostics import (
    EnvelopeEntry,
    EnvelopeReport,
    PropertyAReport,
    log_envelope_check,
    property_a_check,
    rlinear_fit,
    solver_vs_recurrence,
    superlinear_envelope_check,
    write_report_csv,
)
from spectral.analysis.profiles import (
    DEFAULT_RHO_GRID,
    ProfileCurve,
    performance_profile,
    write_profile_csv,
)
