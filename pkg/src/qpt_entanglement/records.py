"""Per-coupling measure records shared by the analytic and ED pipelines."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class MeasureReport:
    """Entanglement measures of the Ising ground state at one coupling.

    ``g2l[l-1]`` holds G(2, l). ``upper_bound`` marks values above the
    critical coupling, where the two-site state is an upper-bound state.
    """

    lam: float
    eg1: float
    g2l: np.ndarray
    eg2: float
    sv_single_site: float
    upper_bound: bool = field(default=False)

    def __post_init__(self):
        g2l = np.array(self.g2l, dtype=float)
        g2l.setflags(write=False)
        object.__setattr__(self, "g2l", g2l)
        object.__setattr__(self, "upper_bound", bool(self.lam > 1.0))

    @property
    def l_max(self) -> int:
        return len(self.g2l)
