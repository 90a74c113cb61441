"""Two-photon six-qubit hyperentangled cluster state toolkit.

Thin python layer over the C++ core: state construction, stabilizer and
Bell analysis, one-way CNOT measurement patterns and maximum-likelihood
tomography of two-qubit substates.
"""

import os
from pathlib import Path

from ._core import (
    basis_labels,
    build_he6,
    build_lc6_tilde,
    cnot_io_matrix,
    conditional_bell,
    lhv_maxima,
    parse_angle,
    run_pattern,
    stabilizer_report,
    tomography_run as _tomography_run,
)

__all__ = [
    "basis_labels",
    "build_he6",
    "build_lc6_tilde",
    "cnot_io_matrix",
    "conditional_bell",
    "data_dir",
    "lhv_maxima",
    "parse_angle",
    "run_pattern",
    "stabilizer_report",
    "tomography_run",
]

__version__ = "0.1.0"


def data_dir() -> Path:
    """Directory holding the bundled reference data files."""
    env = os.environ.get("HE6SIM_DATA_DIR")
    if env:
        return Path(env)
    packaged = Path(__file__).resolve().parent / "paper-data"
    if packaged.is_dir():
        return packaged
    return Path("paper-data")


def tomography_run(dof, branch, counts_per_setting=10000.0, seed=12345, settings_path=None,
                   p_pi=0.0, p_k=0.0, p_c=0.0, w=0.0):
    """Simulate coincidence counts for one branch and reconstruct the state."""
    if settings_path is None:
        settings_path = str(data_dir() / "tomo_settings_16.json")
    return _tomography_run(dof, branch, counts_per_setting, seed, settings_path,
                           p_pi, p_k, p_c, w)
