"""
RunConfig - Fully resolved settings of one experiment

Settings are layered, lowest to highest: field defaults, a named preset,
a JSON file of flat keys, then command-line overrides. The resolved config
is written to run_config.json in every run directory and reproduces the run
when passed back through --config.
"""
import json
import os
from dataclasses import asdict, dataclass, fields, replace
from numbers import Integral, Real
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

from ..core.errors import InvalidConfigError
from ..core.orientation import OrientationConfig
from ..data.synthetic import DATA_KINDS, GRAPH_KINDS, NOISE_FAMILIES, GraphSpec, NoiseSpec
from ..models.base import RegWeights
from ..training.annealing import Annealing
from ..training.schedule import AnnealSchedule
from ..training.trainer import TrainConfig

OUTPUT_ENV = "COSMO_DAG_OUTPUT"
DEFAULT_OUTPUT = "results"
MODELS = ("cosmo-linear", "cosmo-mlp", "nocurl-u", "cosmo-np")

PRESETS: Dict[str, Dict[str, Any]] = {
    "benchmark": {
        "d": 30,
        "epochs": 2000,
        "seeds": (0, 1, 2, 3, 4),
    },
    "benchmark-mlp": {
        "model": "cosmo-mlp",
        "data": "mlp",
        "d": 20,
        "seeds": (0, 1, 2),
    },
    "smoke": {
        "graph": "SF",
        "d": 5,
        "edge_factor": 1,
        "n": 200,
        "epochs": 2,
        "seeds": (0,),
        "log_every": 0,
    },
}


def _is_int(value) -> bool:
    return isinstance(value, Integral) and not isinstance(value, bool)


def _type_name(annotation) -> str:
    return getattr(annotation, "__name__", None) or "list of int"


def default_output_root() -> Path:
    """Output root from COSMO_DAG_OUTPUT, else ./results"""
    return Path(os.environ.get(OUTPUT_ENV) or DEFAULT_OUTPUT)


@dataclass(frozen=True)
class RunConfig:
    """Data, model, optimizer, schedule and evaluation settings of a run"""

    name: str = "run"
    graph: str = "ER"
    d: int = 30
    edge_factor: int = 4
    noise: str = "gaussian"
    data: str = "linear"
    n: int = 1000
    generator_hidden: int = 100
    model: str = "cosmo-linear"
    hidden: int = 10
    epochs: int = 2000
    batch_size: int = 64
    lr: float = 5.5e-3
    lambda1: float = 5.5e-4
    lambda2: float = 3e-3
    lambda_p: float = 2e-3
    eps: float = 1.25e-2
    t_start: float = 0.45
    t_end: float = 7.5e-4
    curve: str = "cosine"
    center: bool = True
    omega: float = 0.3
    seeds: Tuple[int, ...] = (0,)
    out: str = ""
    workers: int = 1
    save_data: bool = False
    log_every: int = 100

    def __post_init__(self):
        self._check_types()
        object.__setattr__(self, "seeds", tuple(int(s) for s in self.seeds))
        object.__setattr__(self, "out", str(self.out or default_output_root()))
        self._check_choice("graph", self.graph, GRAPH_KINDS)
        self._check_choice("noise", self.noise, NOISE_FAMILIES)
        self._check_choice("data", self.data, DATA_KINDS)
        self._check_choice("model", self.model, MODELS)
        self._check_choice("curve", self.curve, tuple(Annealing.FUNCTIONS))
        if not self.seeds:
            raise InvalidConfigError("seeds must not be empty")
        if len(set(self.seeds)) != len(self.seeds):
            raise InvalidConfigError(f"seeds must be distinct, got {list(self.seeds)}")
        if not self.omega > 0:
            raise InvalidConfigError(f"threshold omega must be positive, got {self.omega}")
        if self.n < 1:
            raise InvalidConfigError(f"sample size must be positive, got {self.n}")
        if self.workers < 1:
            raise InvalidConfigError(f"workers must be at least 1, got {self.workers}")
        if not self.name or os.sep in self.name:
            raise InvalidConfigError(f"run name must be a plain directory name, got {self.name!r}")
        if self.data == "mlp" and self.noise != "gaussian":
            raise InvalidConfigError("the MLP generator only supports gaussian noise")
        # Delegate the remaining checks to the component configs
        self.graph_spec(self.seeds[0])
        self.train_config(self.seeds[0])
        self.schedule()
        self.orientation()

    def _check_types(self):
        """Reject values whose type does not match the field annotation; ints widen to float"""
        for f in fields(self):
            value = getattr(self, f.name)
            if f.type is bool:
                valid = isinstance(value, bool)
            elif f.type is int:
                valid = _is_int(value)
            elif f.type is float:
                valid = isinstance(value, Real) and not isinstance(value, bool)
                if valid:
                    object.__setattr__(self, f.name, float(value))
            elif f.type is str:
                valid = isinstance(value, str)
            else:
                valid = isinstance(value, (list, tuple)) and all(_is_int(v) for v in value)
            if not valid:
                raise InvalidConfigError(f"{f.name} must be of type {_type_name(f.type)}, got {value!r}")

    @staticmethod
    def _check_choice(key: str, value: str, choices):
        if value not in choices:
            raise InvalidConfigError(f"{key} must be one of {list(choices)}, got {value!r}")

    @classmethod
    def keys(cls) -> Tuple[str, ...]:
        return tuple(f.name for f in fields(cls))

    @classmethod
    def from_dict(cls, data: Dict[str, Any], base: Optional["RunConfig"] = None) -> "RunConfig":
        """Apply flat `data` on top of `base` (the defaults when omitted)"""
        unknown = sorted(set(data) - set(cls.keys()))
        if unknown:
            raise InvalidConfigError(f"unknown config keys: {', '.join(unknown)}")
        try:
            return replace(base, **data) if base is not None else cls(**data)
        except TypeError as e:
            raise InvalidConfigError(str(e)) from e

    @classmethod
    def from_file(cls, path: Union[str, Path], base: Optional["RunConfig"] = None) -> "RunConfig":
        """Load a JSON document of flat keys"""
        try:
            with open(path, encoding="utf-8") as f:
                data = json.load(f)
        except json.JSONDecodeError as e:
            raise InvalidConfigError(f"{path} is not valid JSON: {e}") from e
        if not isinstance(data, dict):
            raise InvalidConfigError(f"{path} must hold a JSON object of flat keys")
        return cls.from_dict(data, base)

    @classmethod
    def resolve(cls, preset: Optional[str] = None, path: Optional[Union[str, Path]] = None,
                overrides: Optional[Dict[str, Any]] = None) -> "RunConfig":
        """Defaults, then preset, then file, then overrides"""
        layers: Dict[str, Any] = {}
        if preset is not None:
            if preset not in PRESETS:
                raise InvalidConfigError(f"unknown preset {preset!r}, expected one of {sorted(PRESETS)}")
            layers.update(PRESETS[preset])
        config = cls.from_dict(layers)
        if path is not None:
            config = cls.from_file(path, config)
        if overrides:
            config = cls.from_dict(overrides, config)
        return config

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["seeds"] = list(self.seeds)
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def write(self, path: Union[str, Path]):
        """Write the resolved config as run_config.json"""
        with open(path, "w", encoding="utf-8") as f:
            f.write(self.to_json() + "\n")

    @property
    def run_dir(self) -> Path:
        return Path(self.out) / self.name

    def graph_spec(self, seed: int) -> GraphSpec:
        return GraphSpec(d=self.d, kind=self.graph, edge_factor=self.edge_factor, seed=seed)

    def noise_spec(self) -> NoiseSpec:
        return NoiseSpec(self.noise)

    def reg(self) -> RegWeights:
        """Penalty weights; cosmo-np drops the priority penalty"""
        lambda_p = 0.0 if self.model == "cosmo-np" else self.lambda_p
        return RegWeights(lambda1=self.lambda1, lambda2=self.lambda2, lambda_p=lambda_p)

    def train_config(self, seed: int, track_acyclicity: bool = True) -> TrainConfig:
        return TrainConfig(
            batch_size=self.batch_size,
            epochs=self.epochs,
            lr=self.lr,
            reg=self.reg(),
            eps=self.eps,
            seed=seed,
            center=self.center,
            track_acyclicity=track_acyclicity,
            log_every=self.log_every,
        )

    def schedule(self) -> AnnealSchedule:
        return AnnealSchedule(t_start=self.t_start, t_end=self.t_end, epochs=self.epochs, curve=self.curve)

    def orientation(self) -> OrientationConfig:
        """Orientation config at the starting temperature"""
        return OrientationConfig(eps=self.eps, t=self.t_start)
