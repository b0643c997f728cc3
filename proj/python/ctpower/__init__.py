"""Control power analysis for perfect controlled quantum teleportation.

The heavy lifting lives in the compiled extension ``ctpower._core``; this
package re-exports its public surface.
"""

from ._core import (
    AnalysisReport,
    ControllerRecord,
    CorrectionTable,
    CriteriaReport,
    McEstimate,
    NoPauliFrameError,
    PauliString,
    Pe4Params,
    Pe4Row,
    ProtocolSpec,
    PureState,
    RngStream,
    SchemeConfig,
    average_ncf_analytic,
    average_ncf_mc,
    classical_limit,
    conditioned_fidelity,
    controller_qubit_bound,
    derive_corrections,
    haar_random_state,
    make_scheme,
    min_control_power,
    ncf,
    pe4_ncf_analytic,
    pe4_sweep,
    sweep_csv,
    verdict,
)

__all__ = [
    "AnalysisReport",
    "ControllerRecord",
    "CorrectionTable",
    "CriteriaReport",
    "McEstimate",
    "NoPauliFrameError",
    "PauliString",
    "Pe4Params",
    "Pe4Row",
    "ProtocolSpec",
    "PureState",
    "RngStream",
    "SchemeConfig",
    "average_ncf_analytic",
    "average_ncf_mc",
    "classical_limit",
    "conditioned_fidelity",
    "controller_qubit_bound",
    "derive_corrections",
    "haar_random_state",
    "make_scheme",
    "min_control_power",
    "ncf",
    "pe4_ncf_analytic",
    "pe4_sweep",
    "sweep_csv",
    "verdict",
]

__version__ = "0.1.0"
