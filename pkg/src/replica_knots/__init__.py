"""Replica-limit Gaussian matrix moments and the knot data attached to them."""

import os

# numba re-reads its config from the environment when compiling; the bundled
# TBB is too old, so keep it last to avoid a warning on every parallel launch
os.environ.setdefault("NUMBA_THREADING_LAYER_PRIORITY", "omp workqueue tbb")

__version__ = "0.1.0"
