"""Named tolerances and sampling budgets with documented defaults.

All stochastic operations take an explicit 64-bit seed and are deterministic
given (seed, samples).  Tolerance names are stable: the CLI exposes each one
as ``--tol.<name>`` and echoes the effective values into its JSON output.
"""

from dataclasses import dataclass, field, asdict


@dataclass(frozen=True)
class Tolerances:
    point_eq: float = 1e-12        # projective point equality, unit representatives
    det: float = 1e-9              # |det| band around 1 after normalization
    collinear: float = 1e-9        # rank test for cross-ratio preconditions
    boundary_band: float = 1e-10   # oracle membership band around the boundary
    chord_bisect: float = 1e-12    # relative tolerance of chord bisection
    eig_cluster: float = 1e-7      # relative radius for eigenvalue clustering
    modulus_band: float = 1e-7     # relative band around modulus 1 (parabolic test)
    dedup: float = 1e-9            # matrix distance for group-ball deduplication
    incidence: float = 1e-9        # point-on-hyperplane test
    flat_probe: float = 1e-8       # boundary-segment flatness probes


@dataclass(frozen=True)
class Budgets:
    finsler_directions: int = 256  # directions per Finsler unit-ball estimate
    benzecri_grid: int = 2000      # direction grid verifying chart sandwiches
    chord_iters: int = 200         # max bisection iterations per chord
    group_elements: int = 20000    # group-ball explosion guard
    polytope_dim_cap: int = 12     # vertex-list membership dimension cap


DEFAULT_TOL = Tolerances()
DEFAULT_BUDGET = Budgets()


@dataclass
class RunConfig:
    """Effective configuration of one CLI run, echoed into every output."""

    seed: int = 0
    samples: int = 10000
    tolerances: Tolerances = field(default_factory=Tolerances)
    budgets: Budgets = field(default_factory=Budgets)
    out: str | None = None

    def as_dict(self):
        return {
            "seed": self.seed,
            "samples": self.samples,
            "tolerances": asdict(self.tolerances),
            "budgets": asdict(self.budgets),
            "out": self.out,
        }

    def with_tolerances(self, **kw):
        merged = {**asdict(self.tolerances), **kw}
        self.tolerances = Tolerances(**merged)
        return self
