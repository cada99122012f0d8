"""Quantum cat maps on the torus: propagators, OTOCs, entropies and Wigner functions."""

from ._catotoc import (
    BudgetExceeded,
    CatotocError,
    ConfigError,
    InvalidArgument,
    NumericalHealthError,
    Propagator,
    __version__,
    clock_operator,
    coherent_state,
    dft_matrix,
    entropies,
    lyapunov_1d,
    momentum_operator,
    operator_schmidt,
    otoc,
    otoc_re_sum,
    partial_trace,
    position_operator,
    product_state,
    propagator_1d,
    rmt_saturation,
    run_scenario,
    shift_operator,
    step_1d,
    verify,
    wigner,
    wse,
)

__all__ = [name for name in dir() if not name.startswith("_")]
