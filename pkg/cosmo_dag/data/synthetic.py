"""
Synthetic - Random DAGs and structural equation model samplers

Graphs follow the NOTEARS testbed: Erdos-Renyi or Barabasi-Albert skeletons,
oriented along node insertion order and relabelled by a random permutation.
"""
from dataclasses import dataclass
from typing import Optional, Tuple

import networkx as nx
import numpy as np
from scipy.special import expit

from ..core.errors import CyclicGraphError, InvalidConfigError, InvalidInputError
from ..core.graph import as_binary, as_square, support, topological_order

GRAPH_KINDS = ("ER", "SF")
NOISE_FAMILIES = ("gaussian", "exponential", "gumbel")
DATA_KINDS = ("linear", "mlp")
WEIGHT_RANGE = (0.5, 2.0)
GENERATOR_HIDDEN = 100


@dataclass(frozen=True)
class GraphSpec:
    """Random DAG family: ER-k or SF-k over d nodes"""

    d: int
    kind: str = "ER"
    edge_factor: int = 4
    seed: int = 0

    def __post_init__(self):
        if self.kind not in GRAPH_KINDS:
            raise InvalidConfigError(f"graph kind must be one of {GRAPH_KINDS}, got {self.kind!r}")
        if self.d < 1:
            raise InvalidConfigError(f"node count must be positive, got {self.d}")
        if self.edge_factor < 0:
            raise InvalidConfigError(f"edge factor must be non-negative, got {self.edge_factor}")
        if self.edge_factor * self.d > self.d * (self.d - 1) / 2:
            raise InvalidConfigError(
                f"{self.kind}{self.edge_factor} needs {self.edge_factor * self.d} arcs, "
                f"more than the {self.d * (self.d - 1) // 2} pairs of a {self.d}-node graph"
            )

    @property
    def target_arcs(self) -> int:
        """Expected (ER) or attachment-driven (SF) arc count k * d"""
        return self.edge_factor * self.d

    @property
    def name(self) -> str:
        return f"{self.kind}{self.edge_factor}"


@dataclass(frozen=True)
class NoiseSpec:
    """Exogenous noise family with the fixed testbed parameters"""

    family: str = "gaussian"

    def __post_init__(self):
        if self.family not in NOISE_FAMILIES:
            raise InvalidConfigError(f"noise family must be one of {NOISE_FAMILIES}, got {self.family!r}")

    def sample(self, rng: np.random.Generator, size) -> np.ndarray:
        """Draw noise: N(0, 1), Exponential(rate 1) or Gumbel(0, 1)"""
        if self.family == "gaussian":
            return rng.normal(0.0, 1.0, size=size)
        if self.family == "exponential":
            return rng.exponential(1.0, size=size)
        return rng.gumbel(0.0, 1.0, size=size)


@dataclass
class Dataset:
    """Observations X (n x d) with their ground-truth graph and generation metadata"""

    X: np.ndarray
    W_true: np.ndarray
    noise: NoiseSpec
    kind: str = "linear"
    graph: Optional[GraphSpec] = None
    seed: Optional[int] = None

    @property
    def n(self) -> int:
        return self.X.shape[0]

    @property
    def d(self) -> int:
        return self.X.shape[1]

    @property
    def binary(self) -> np.ndarray:
        """Ground-truth binary adjacency"""
        return support(self.W_true)


def _seed_int(rng: np.random.Generator) -> int:
    return int(rng.integers(0, 2 ** 31 - 1))


def _skeleton(spec: GraphSpec, rng: np.random.Generator) -> nx.Graph:
    if spec.edge_factor == 0 or spec.d < 2:
        return nx.empty_graph(spec.d)
    if spec.kind == "ER":
        probability = 2.0 * spec.edge_factor / (spec.d - 1)
        return nx.gnp_random_graph(spec.d, probability, seed=_seed_int(rng))
    return nx.barabasi_albert_graph(spec.d, spec.edge_factor, seed=_seed_int(rng))


def random_dag(spec: GraphSpec) -> np.ndarray:
    """Sample an ER-k or SF-k DAG as a binary adjacency matrix.

    Skeleton edges are oriented from the lower to the higher node index, which
    is the attachment order for Barabasi-Albert graphs, then all labels are
    shuffled by one uniform permutation. For SF the arc count is exactly
    k * (d - k): networkx seeds the process with a k-edge star on k + 1 nodes
    and every later node attaches k arcs.
    """
    rng = np.random.default_rng(spec.seed)
    skeleton = _skeleton(spec, rng)
    ordered = np.zeros((spec.d, spec.d), dtype=bool)
    for u, v in skeleton.edges():
        ordered[min(u, v), max(u, v)] = True
    perm = rng.permutation(spec.d)
    return ordered[np.ix_(perm, perm)]


def random_weights(A, seed=None, weight_range: Tuple[float, float] = WEIGHT_RANGE) -> np.ndarray:
    """Weights uniform on (-high, -low) U (low, high) for every present arc"""
    A = as_binary(A)
    rng = np.random.default_rng(seed)
    low, high = weight_range
    magnitude = rng.uniform(low, high, size=A.shape)
    sign = rng.choice([-1.0, 1.0], size=A.shape)
    return np.where(A, sign * magnitude, 0.0)


def _simulation_order(A: np.ndarray):
    result = topological_order(A)
    if not result.is_acyclic:
        raise CyclicGraphError(f"cannot simulate a cyclic graph; nodes on cycles: {sorted(result.remaining)}")
    return result.order


def sample_linear_sem(W, noise: NoiseSpec, n: int, seed=None) -> Dataset:
    """Simulate x_v = sum_u W[u, v] x_u + z_v in topological order"""
    W = as_square(W, "W").astype(float)
    if n < 1:
        raise InvalidInputError(f"sample count must be positive, got {n}")
    order = _simulation_order(support(W))
    rng = np.random.default_rng(seed)
    Z = noise.sample(rng, (n, W.shape[0]))
    X = np.zeros_like(Z)
    for v in order:
        X[:, v] = X @ W[:, v] + Z[:, v]
    return Dataset(X=X, W_true=W, noise=noise, kind="linear", seed=seed)


def sample_mlp_sem(A, hidden: int = GENERATOR_HIDDEN, n: int = 1000, seed=None,
                   weight_range: Tuple[float, float] = WEIGHT_RANGE) -> Dataset:
    """Simulate x_v = MLP_v(parents of v) + N(0, 1) noise in topological order.

    Each node gets a one-hidden-layer sigmoid network. Input weights are
    uniform on +-(low, high) with random sign, output weights uniform on
    (low, high).
    """
    A = as_binary(A)
    if hidden < 1 or n < 1:
        raise InvalidInputError(f"hidden width and sample count must be positive, got {hidden}, {n}")
    order = _simulation_order(A)
    noise = NoiseSpec("gaussian")
    rng = np.random.default_rng(seed)
    low, high = weight_range
    d = A.shape[0]
    Z = noise.sample(rng, (n, d))
    X = np.zeros_like(Z)

    for v in order:
        parents = np.flatnonzero(A[:, v])
        if parents.size == 0:
            X[:, v] = Z[:, v]
            continue
        W1 = rng.uniform(low, high, size=(parents.size, hidden)) * rng.choice([-1.0, 1.0], size=(parents.size, hidden))
        W2 = rng.uniform(low, high, size=hidden)
        X[:, v] = expit(X[:, parents] @ W1) @ W2 + Z[:, v]

    return Dataset(X=X, W_true=A.astype(float), noise=noise, kind="mlp", seed=seed)


def simulate(spec: GraphSpec, noise: NoiseSpec, n: int, seed: int, kind: str = "linear",
             hidden: int = GENERATOR_HIDDEN) -> Dataset:
    """Graph, weights and samples in one call, each stage on its own spawned seed"""
    if kind not in DATA_KINDS:
        raise InvalidConfigError(f"data kind must be one of {DATA_KINDS}, got {kind!r}")
    weight_seed, sample_seed = np.random.SeedSequence(seed).spawn(2)
    A = random_dag(spec)
    if kind == "linear":
        dataset = sample_linear_sem(random_weights(A, weight_seed), noise, n, sample_seed)
    else:
        if noise.family != "gaussian":
            raise InvalidConfigError("the MLP generator only supports gaussian noise")
        dataset = sample_mlp_sem(A, hidden, n, sample_seed)
    dataset.graph = spec
    dataset.seed = seed
    return dataset
