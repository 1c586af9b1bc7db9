"""Construction parameters, derived sizes, and the per-run report."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from ..errors import ParameterError, SizeError


def log_rho(n: int, p: float) -> float:
    """log base 1/(1-p) of n, the natural saturation scale of G(n,p)."""
    if not 0.0 < p < 1.0:
        raise ParameterError("log_rho needs 0 < p < 1")
    return math.log(n) / math.log(1.0 / (1.0 - p))


def rho(p: float) -> float:
    return 1.0 / (1.0 - p)


@dataclass
class Params:
    """Tunable constants shared by the constructions.

    The None defaults resolve per run: gamma to min(0.05, 1/(32*s_max)),
    L and C_ind to their formula values capped so every derived set fits
    inside the host. The asymptotic formula values overflow any desk-scale
    host, so the caps (and the resolved values in each report) matter.
    """

    eps: float = 0.1
    gamma: Optional[float] = None
    L: Optional[float] = None
    C_ind: Optional[float] = None
    delta: float = 0.1
    seed: int = 0
    n_min: Optional[int] = None
    force: bool = False
    verify_guard: int = 3000
    verify_samples: int = 10_000

    def resolved_gamma(self, s_max: int) -> float:
        if self.gamma is not None:
            return self.gamma
        return min(0.05, 1.0 / (32.0 * max(1, s_max)))

    def formula_L(self, s_last: int, p: float) -> float:
        return math.ceil(20.0 * (s_last + 2) / p ** (s_last + 1))

    def formula_C_ind(self, v_max: int, p: float) -> float:
        return math.ceil(8.0 / p**v_max)


@dataclass
class LogSizes:
    """Derived set sizes for the logarithmic-regime constructions."""

    a1: int
    a2: int
    a3: int
    interval: tuple[float, float]
    edge_threshold: float
    ball_threshold: float
    L_effective: float
    gamma: float

    def as_dict(self) -> dict:
        return {
            "a1": self.a1,
            "a2": self.a2,
            "a3": self.a3,
            "interval_lo": round(self.interval[0], 6),
            "interval_hi": round(self.interval[1], 6),
            "edge_threshold": round(self.edge_threshold, 6),
            "ball_threshold": round(self.ball_threshold, 6),
            "L_effective": self.L_effective,
            "gamma": self.gamma,
        }


def degree_interval(n: int, p: float, eps: float, gamma: float) -> tuple[float, float]:
    """Acceptable A1-degree window [(1+eps)log, (1+(1+2*gamma)*eps)log]."""
    base = log_rho(n, p)
    return ((1.0 + eps) * base, (1.0 + (1.0 + 2.0 * gamma) * eps) * base)


def codegree_edge_threshold(n: int, p: float, eps: float, gamma: float) -> float:
    return (1.0 + (1.0 - 6.0 * gamma) * eps) * log_rho(n, p)


def ball_cover_threshold(n: int, p: float, eps: float, gamma: float) -> float:
    return (1.0 + (1.0 - gamma) * eps) * log_rho(n, p)


def derive_log_sizes(n: int, p: float, params: Params, s: tuple[int, ...]) -> LogSizes:
    """a1, a2, a3 for the log-regime constructions, capped to fit the host."""
    s_max = max(s)
    gamma = params.resolved_gamma(s_max)
    eps = params.eps
    base = log_rho(n, p)
    a1 = math.ceil((1.0 / p) * (1.0 + (1.0 + gamma) * eps) * base)
    L = params.L if params.L is not None else params.formula_L(s[-1], p)
    budget = n // 2 - a1
    if budget < 2:
        raise SizeError(f"n={n} too small: a1={a1} leaves no room for a2+a3")
    a2 = max(1, round(L * base))
    if a2 > budget - 1:
        a2 = max(1, (budget * 2) // 3)
        L = a2 / base
    a3 = max(1, round(a2 / math.sqrt(math.log(max(a2, 2)))))
    if a1 + a2 + a3 > n // 2:
        a3 = max(1, n // 2 - a1 - a2)
    if a1 + a2 + a3 > n // 2:
        raise SizeError(f"n={n} too small for a1+a2+a3 = {a1}+{a2}+{a3} > n/2")
    return LogSizes(
        a1=a1,
        a2=a2,
        a3=a3,
        interval=degree_interval(n, p, eps, gamma),
        edge_threshold=codegree_edge_threshold(n, p, eps, gamma),
        ball_threshold=ball_cover_threshold(n, p, eps, gamma),
        L_effective=L,
        gamma=gamma,
    )


def bipartite_tau(n: int, p: float, ell: int) -> int:
    """Smallest t with (1 - p^(ell-1))^t * n <= n^(2/5)."""
    if n <= 1:
        return 1
    miss = 1.0 - p ** (ell - 1)
    if miss <= 0.0:
        return 1
    t = 1
    bound = n ** 0.4
    val = float(n)
    while val * miss > bound and t < n:
        val *= miss
        t += 1
    # t now satisfies n * miss^t <= bound
    return t


@dataclass
class ConstructionReport:
    """Phase-by-phase accounting of one construction run."""

    construction: str
    n: int
    p: float
    seed: int
    sizes: dict = field(default_factory=dict)
    phases: dict = field(default_factory=dict)  # phase name -> edges contributed
    unmatched_per_round: list = field(default_factory=list)
    moved_to_b2: int = 0
    uncompleted_before_patch: int = 0
    uncompleted_by_class: dict = field(default_factory=dict)
    patch_added: int = 0
    edges_before_patch: int = 0
    edges_final: int = 0
    verified: str = "unverified"
    warnings: list = field(default_factory=list)
    diag: dict = field(default_factory=dict)
    runtime_ms: float = 0.0

    def add_phase(self, name: str, edge_count: int) -> None:
        self.phases[name] = self.phases.get(name, 0) + edge_count

    def check_accounting(self) -> None:
        total = sum(self.phases.values()) + self.patch_added
        if total != self.edges_final:
            raise AssertionError(
                f"phase accounting broken: phases+patch = {total}, final = {self.edges_final}"
            )
        if self.edges_before_patch != sum(self.phases.values()):
            raise AssertionError("edges_before_patch must equal the phase sum")

    def to_kv(self) -> str:
        """Flat key=value block, one entry per line."""
        lines = [
            f"construction={self.construction}",
            f"n={self.n}",
            f"p={self.p}",
            f"seed={self.seed}",
        ]
        for k, v in self.sizes.items():
            lines.append(f"size.{k}={v}")
        for k, v in self.phases.items():
            lines.append(f"phase.{k}={v}")
        for i, cnt in enumerate(self.unmatched_per_round, 1):
            lines.append(f"unmatched.round{i}={cnt}")
        if self.moved_to_b2:
            lines.append(f"moved_to_b2={self.moved_to_b2}")
        lines.append(f"edges_before_patch={self.edges_before_patch}")
        lines.append(f"uncompleted_before_patch={self.uncompleted_before_patch}")
        for k, v in sorted(self.uncompleted_by_class.items()):
            lines.append(f"uncompleted.{k}={v}")
        lines.append(f"patch_added={self.patch_added}")
        lines.append(f"edges_final={self.edges_final}")
        lines.append(f"verified={self.verified}")
        for k, v in self.diag.items():
            lines.append(f"diag.{k}={v}")
        for i, w in enumerate(self.warnings):
            lines.append(f"warning.{i}={w}")
        lines.append(f"runtime_ms={self.runtime_ms:.1f}")
        return "\n".join(lines)
