"""One-level SORAS/ORAS Schwarz preconditioners for heterogeneous Helmholtz problems."""

try:
    from ._helmholtz_dd import *  # noqa: F401,F403  (installed layout)
except ImportError:  # in-tree builds keep the extension in the build directory
    from _helmholtz_dd import *  # noqa: F401,F403

__all__ = [
    "FovPoint",
    "PhaseTimings",
    "RunConfig",
    "RunRecord",
    "SizeCapError",
    "build_coarse",
    "dof_cap",
    "elman_predicted_iterations",
    "estimated_dofs",
    "run",
    "sweep",
    "sweep_table_ids",
    "write_record",
]
