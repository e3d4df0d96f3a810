"""Ordered parallel map and run manifests shared by the figure and
verification front ends."""
import datetime
import os
import platform
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

WORKERS_ENV = "ANYONBOUNDS_WORKERS"


def worker_count(requested=None):
    """Explicit request, else $ANYONBOUNDS_WORKERS, else 1."""
    if requested is not None:
        n = int(requested)
    else:
        raw = os.environ.get(WORKERS_ENV, "").strip()
        n = int(raw) if raw else 1
    return max(1, n)


def ordered_map(func, items, workers=None):
    """map(func, items) with results in input order whatever the schedule."""
    items = list(items)
    n = worker_count(workers)
    if n == 1 or len(items) < 2:
        return [func(x) for x in items]
    with ProcessPoolExecutor(max_workers=min(n, len(items))) as pool:
        return list(pool.map(func, items, chunksize=max(1, len(items) // (4 * n))))


def _versions():
    import numpy
    import scipy
    from . import __version__
    return (f"anyonbounds {__version__}; numpy {numpy.__version__}; "
            f"scipy {scipy.__version__}; python {platform.python_version()}")


@dataclass(frozen=True)
class RunManifest:
    command: str
    seed: int
    versions: str
    timestamp: str

    @classmethod
    def capture(cls, seed=0, argv=None):
        argv = sys.argv if argv is None else argv
        stamp = datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds")
        return cls(" ".join(argv), int(seed), _versions(), stamp)

    def header_lines(self):
        return [f"# command: {self.command}", f"# seed: {self.seed}",
                f"# versions: {self.versions}", f"# timestamp: {self.timestamp}"]
