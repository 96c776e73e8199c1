"""BLAS thread-count pinning, applied before numpy is first imported.

Dense singular-value sweeps on many small matrices lose badly to
thread oversubscription, and reproducible timing needs a fixed pool
size.  SCHURBOUND_THREADS=k pins every common BLAS backend to k
threads; unset leaves the backends at their own defaults.  Explicit
per-backend environment variables set by the user always win, since
only unset variables are touched.
"""

import os

_BACKEND_VARS = (
    "OMP_NUM_THREADS",
    "OPENBLAS_NUM_THREADS",
    "MKL_NUM_THREADS",
    "NUMEXPR_NUM_THREADS",
    "VECLIB_MAXIMUM_THREADS",
)


def apply_thread_cap():
    cap = os.environ.get("SCHURBOUND_THREADS")
    if not cap:
        return
    cap = cap.strip()
    if not cap.isdigit() or int(cap) < 1:
        # a malformed cap must not break import; it is simply ignored
        return
    for var in _BACKEND_VARS:
        os.environ.setdefault(var, cap)
