"""Solution encodings and variation operators for the EA and PSO engines.

All operators draw randomness exclusively from the generator handed in, so a
fixed seed reproduces offspring bit for bit.  Outputs always respect the
encoding bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core.types import ConstraintRecord, MOFitness, Solution
from .errors import ConfigurationError, StateError


# ---------------------------------------------------------------------------
# encodings
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RealVectorSpec:
    lower: tuple[float, ...]
    upper: tuple[float, ...]

    def __post_init__(self):
        if len(self.lower) != len(self.upper) or not self.lower:
            raise ConfigurationError("real-vector bounds must be equal-length and non-empty")
        if any(lo >= up for lo, up in zip(self.lower, self.upper)):
            raise ConfigurationError("real-vector bounds require lower < upper per gene")

    @property
    def n(self) -> int:
        return len(self.lower)

    @property
    def lb(self) -> np.ndarray:
        return np.asarray(self.lower, dtype=np.float64)

    @property
    def ub(self) -> np.ndarray:
        return np.asarray(self.upper, dtype=np.float64)


@dataclass(frozen=True)
class BitStringSpec:
    length: int

    def __post_init__(self):
        if self.length < 1:
            raise ConfigurationError("bit-string length must be positive")

    @property
    def n(self) -> int:
        return self.length


@dataclass(frozen=True)
class IntVectorSpec:
    lower: tuple[int, ...]
    upper: tuple[int, ...]

    def __post_init__(self):
        if len(self.lower) != len(self.upper) or not self.lower:
            raise ConfigurationError("int-vector bounds must be equal-length and non-empty")
        if any(lo >= up for lo, up in zip(self.lower, self.upper)):
            raise ConfigurationError("int-vector bounds require lower < upper per gene")

    @property
    def n(self) -> int:
        return len(self.lower)


EncodingSpec = RealVectorSpec | BitStringSpec | IntVectorSpec


@dataclass(eq=False)
class Particle(Solution):
    """Real-vector solution extended with velocity and personal-best memory."""

    velocity: np.ndarray = None  # type: ignore[assignment]
    pbest_genotype: np.ndarray = None  # type: ignore[assignment]
    pbest_fitness: MOFitness | None = None
    pbest_constraints: ConstraintRecord | None = None

    def __post_init__(self):
        super().__post_init__()
        if self.velocity is None:
            self.velocity = np.zeros_like(np.asarray(self.genotype, dtype=np.float64))
        if self.pbest_genotype is None:
            self.pbest_genotype = np.asarray(self.genotype, dtype=np.float64).copy()

    def remember_best(self) -> None:
        """Store the current position as personal best."""
        self.pbest_genotype = self.genotype.copy()
        self.pbest_fitness = self.fitness.copy() if self.fitness else None
        self.pbest_constraints = self.constraints

    def snapshot(self) -> Solution:
        """Plain solution copy of the current position (for archives/fronts)."""
        return Solution(self.genotype.copy(),
                        self.fitness.copy() if self.fitness else None,
                        self.constraints)


def init_population(spec: EncodingSpec, size: int, rng: np.random.Generator,
                    particles: bool = False) -> list[Solution]:
    """Uniformly sample ``size`` solutions within the encoding bounds.

    Particles start with zero velocity and personal best at the initial
    position.
    """
    if size < 1:
        raise ConfigurationError("population size must be >= 1")
    out: list[Solution] = []
    for _ in range(size):
        if isinstance(spec, RealVectorSpec):
            x = rng.uniform(spec.lb, spec.ub)
        elif isinstance(spec, BitStringSpec):
            x = rng.integers(0, 2, size=spec.length).astype(np.int64)
        elif isinstance(spec, IntVectorSpec):
            x = rng.integers(np.asarray(spec.lower), np.asarray(spec.upper), endpoint=True)
        else:
            raise ConfigurationError(f"unknown encoding spec {type(spec).__name__}")
        if particles:
            if not isinstance(spec, RealVectorSpec):
                raise ConfigurationError("particles require a real-vector encoding")
            out.append(Particle(genotype=x))
        else:
            out.append(Solution(genotype=x))
    return out


# ---------------------------------------------------------------------------
# real-vector operators
# ---------------------------------------------------------------------------

def blx_alpha_crossover(p1: np.ndarray, p2: np.ndarray, spec: RealVectorSpec,
                        rng: np.random.Generator, alpha: float = 0.5):
    """Blend crossover: children sampled in the alpha-extended parent interval."""
    if alpha < 0:
        raise ConfigurationError("blx alpha must be >= 0")
    lo = np.minimum(p1, p2)
    hi = np.maximum(p1, p2)
    d = hi - lo
    a = lo - alpha * d
    b = hi + alpha * d
    c1 = rng.uniform(a, b)
    c2 = rng.uniform(a, b)
    return np.clip(c1, spec.lb, spec.ub), np.clip(c2, spec.lb, spec.ub)


def sbx_crossover(p1: np.ndarray, p2: np.ndarray, spec: RealVectorSpec,
                  rng: np.random.Generator, eta: float = 20.0):
    """Simulated binary crossover; each gene recombined with probability 0.5.

    The spread factor follows the unbounded SBX distribution and children are
    swapped per gene with probability 0.5 (the recombining step), so the
    children's gene mean equals the parents' before bound clipping.
    """
    n = spec.n
    c1 = p1.astype(np.float64).copy()
    c2 = p2.astype(np.float64).copy()
    do = rng.random(n) <= 0.5
    u = rng.random(n)
    beta = np.where(u <= 0.5, (2.0 * u) ** (1.0 / (eta + 1.0)),
                    (1.0 / (2.0 * (1.0 - u))) ** (1.0 / (eta + 1.0)))
    near = 0.5 * ((1 + beta) * p1 + (1 - beta) * p2)
    far = 0.5 * ((1 - beta) * p1 + (1 + beta) * p2)
    swap = rng.random(n) <= 0.5
    lo = np.where(swap, far, near)
    hi = np.where(swap, near, far)
    c1[do] = lo[do]
    c2[do] = hi[do]
    return np.clip(c1, spec.lb, spec.ub), np.clip(c2, spec.lb, spec.ub)


def polynomial_mutation(x: np.ndarray, spec: RealVectorSpec, rng: np.random.Generator,
                        prob: float | None = None, eta: float = 20.0) -> np.ndarray:
    """Deb's polynomial mutation; each gene perturbed with probability ``prob``.

    ``prob`` defaults to 1/n.  Boundary genes stay inside bounds because the
    perturbation magnitude shrinks to zero at the violated side.
    """
    if eta <= 0:
        raise ConfigurationError("mutation distribution index must be positive")
    n = spec.n
    if prob is None:
        prob = 1.0 / n
    if not 0.0 <= prob <= 1.0:
        raise ConfigurationError("mutation probability must lie in [0, 1]")
    lb, ub = spec.lb, spec.ub
    span = ub - lb
    out = x.astype(np.float64).copy()
    do = rng.random(n) < prob
    if not do.any():
        return out
    u = rng.random(n)
    d1 = (out - lb) / span
    d2 = (ub - out) / span
    exp = 1.0 / (eta + 1.0)
    low_branch = (2.0 * u + (1.0 - 2.0 * u) * (1.0 - d1) ** (eta + 1.0)) ** exp - 1.0
    high_branch = 1.0 - (2.0 * (1.0 - u) + 2.0 * (u - 0.5) * (1.0 - d2) ** (eta + 1.0)) ** exp
    delta = np.where(u < 0.5, low_branch, high_branch)
    out[do] = out[do] + delta[do] * span[do]
    return np.clip(out, lb, ub)


# ---------------------------------------------------------------------------
# bit-string and integer operators
# ---------------------------------------------------------------------------

def one_point_crossover(p1: np.ndarray, p2: np.ndarray, spec: BitStringSpec,
                        rng: np.random.Generator):
    cut = int(rng.integers(1, spec.length)) if spec.length > 1 else 1
    c1 = np.concatenate([p1[:cut], p2[cut:]])
    c2 = np.concatenate([p2[:cut], p1[cut:]])
    return c1, c2


def bit_flip_mutation(x: np.ndarray, spec: BitStringSpec, rng: np.random.Generator,
                      prob: float | None = None) -> np.ndarray:
    if prob is None:
        prob = 1.0 / spec.length
    flip = rng.random(spec.length) < prob
    out = x.copy()
    out[flip] = 1 - out[flip]
    return out


def uniform_int_mutation(x: np.ndarray, spec: IntVectorSpec, rng: np.random.Generator,
                         prob: float | None = None) -> np.ndarray:
    """Resample mutated genes uniformly within their integer bounds."""
    n = spec.n
    if prob is None:
        prob = 1.0 / n
    do = rng.random(n) < prob
    out = x.copy()
    fresh = rng.integers(np.asarray(spec.lower), np.asarray(spec.upper), endpoint=True)
    out[do] = fresh[do]
    return out


# ---------------------------------------------------------------------------
# selection
# ---------------------------------------------------------------------------

def binary_tournament(pop: list, cmp, rng: np.random.Generator):
    """Draw two members uniformly (with replacement), return the preferred one.

    ``cmp(a, b)`` follows the -1/0/1 convention; ties break uniformly at
    random.
    """
    if not pop:
        raise StateError("tournament over an empty population")
    i = int(rng.integers(len(pop)))
    j = int(rng.integers(len(pop)))
    a, b = pop[i], pop[j]
    verdict = cmp(a, b)
    if verdict < 0:
        return a
    if verdict > 0:
        return b
    return a if rng.random() < 0.5 else b


# ---------------------------------------------------------------------------
# particle movement
# ---------------------------------------------------------------------------

def smpso_constriction(c1: float, c2: float) -> float:
    """Clerc constriction coefficient with the learning-factor sum floored at 4."""
    phi = max(c1 + c2, 4.0)
    return 2.0 / abs(2.0 - phi - math.sqrt(phi * phi - 4.0 * phi))


def smpso_move(p: Particle, leader: np.ndarray, spec: RealVectorSpec,
               rng: np.random.Generator, c1: float, c2: float,
               inertia: float = 0.1) -> None:
    """Speed-constrained particle update, in place.

    Velocity is constricted, then clamped to half the variable range per
    gene; positions violating a bound are clipped with the offending velocity
    component scaled by -0.001.
    """
    if not (1.5 <= c1 <= 2.5 and 1.5 <= c2 <= 2.5):
        raise ConfigurationError("learning factors must lie in [1.5, 2.5]")
    r1 = rng.random()
    r2 = rng.random()
    chi = smpso_constriction(c1, c2)
    x = p.genotype.astype(np.float64)
    v = chi * (inertia * p.velocity
               + c1 * r1 * (p.pbest_genotype - x)
               + c2 * r2 * (leader - x))
    delta = (spec.ub - spec.lb) / 2.0
    v = np.clip(v, -delta, delta)
    x = x + v
    low = x < spec.lb
    high = x > spec.ub
    x[low] = spec.lb[low]
    x[high] = spec.ub[high]
    v[low | high] *= -0.001
    p.genotype = x
    p.velocity = v
    p.fitness = None
    p.constraints = None


# ---------------------------------------------------------------------------
# operator registry (config-facing)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OperatorInfo:
    kind: str  # "crossover" | "mutation"
    encoding: type
    fn: object
    params: tuple[str, ...] = field(default=())


OPERATORS: dict[str, OperatorInfo] = {
    "blx_alpha": OperatorInfo("crossover", RealVectorSpec, blx_alpha_crossover, ("alpha",)),
    "sbx": OperatorInfo("crossover", RealVectorSpec, sbx_crossover, ("eta",)),
    "polynomial": OperatorInfo("mutation", RealVectorSpec, polynomial_mutation, ("prob", "eta")),
    "one_point": OperatorInfo("crossover", BitStringSpec, one_point_crossover, ()),
    "bit_flip": OperatorInfo("mutation", BitStringSpec, bit_flip_mutation, ("prob",)),
    "uniform_int": OperatorInfo("mutation", IntVectorSpec, uniform_int_mutation, ("prob",)),
}


def operator_ids() -> list[str]:
    return sorted(OPERATORS)


def get_operator(op_id: str) -> OperatorInfo:
    try:
        return OPERATORS[op_id]
    except KeyError:
        raise ConfigurationError(f"unknown operator id '{op_id}'") from None
