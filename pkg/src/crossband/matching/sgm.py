"""Semi-global cost aggregation.

Each path r obeys

    L_r(p, d) = C(p, d) + min(L_r(p-r, d),
                              L_r(p-r, d-1) + P1, L_r(p-r, d+1) + P1,
                              min_k L_r(p-r, k) + P2) - min_k L_r(p-r, k)

and the aggregated volume is the sum of all path costs, added in the fixed
order of :data:`DIRECTIONS`. The first pixel of each path has ``L = C``.
"""

from __future__ import annotations

from dataclasses import dataclass

from crossband import kernels
from crossband.matching.costs import CostVolume

# (dy, dx): the predecessor of (y, x) is (y - dy, x - dx).
DIRECTIONS = (
    (0, 1), (0, -1), (1, 0), (-1, 0),
    (1, 1), (1, -1), (-1, 1), (-1, -1),
)


@dataclass(frozen=True)
class SgmParams:
    p1: float = 10.0
    p2: float = 120.0
    paths: int = 8

    def __post_init__(self):
        if not 0 <= self.p1 <= self.p2:
            raise ValueError(f"need 0 <= p1 <= p2, got p1={self.p1}, p2={self.p2}")
        if self.paths not in (4, 8):
            raise ValueError(f"paths must be 4 or 8, got {self.paths}")

    @property
    def directions(self):
        return DIRECTIONS[:self.paths]


def sgm_aggregate(volume: CostVolume, params: SgmParams = SgmParams(),
                  directions=None, backend=None) -> CostVolume:
    """Sum of path costs. ``directions`` overrides ``params.paths`` (tests use single paths)."""
    k = backend or kernels
    dirs = params.directions if directions is None else tuple(directions)
    return CostVolume(k.sgm_aggregate(volume.costs, params.p1, params.p2, dirs))
