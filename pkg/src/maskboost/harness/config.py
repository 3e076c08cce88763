"""Flat key-value configuration for the experiment harness.

Files are plain text, one ``key = value`` per line, ``#`` comments.
Every DGP constant, booster hyperparameter, grid axis, and output
location lives here so a run is fully reproducible from its config.
"""
from dataclasses import dataclass, field, replace

from ..booster.train import TrainConfig
from ..datagen import DgpAParams, DgpBParams, DistractorParams, SplitSizes


def _floats(text: str) -> tuple[float, ...]:
    return tuple(float(x) for x in text.split(",") if x.strip())


def _strs(text: str) -> tuple[str, ...]:
    return tuple(x.strip() for x in text.split(",") if x.strip())


_SCHEMA = {
    "master_seed": int,
    "seeds": int,
    "dgps": _strs,
    "feature_sets": _strs,
    "arms": _strs,
    "s_values": _floats,
    "n_train": int,
    "n_valid": int,
    "n_test": int,
    "pi": float,
    "p_noise": int,
    "rho": float,
    "dgp_a.sigma_u": float,
    "dgp_a.sigma_v": float,
    "dgp_a.sigma_eps": float,
    "dgp_a.beta": float,
    "dgp_b.mu_e": float,
    "dgp_b.sigma_e": float,
    "dgp_b.sigma_v": float,
    "dgp_b.phi": float,
    "dgp_b.s0": float,
    "dgp_b.beta": float,
    "train.num_rounds": int,
    "train.learning_rate": float,
    "train.max_depth": int,
    "train.reg_lambda": float,
    "train.gamma": float,
    "train.min_child_weight": float,
    "train.row_subsample": float,
    "train.early_stop_patience": int,
    "boundary.sigma_u_grid": _floats,
    "boundary.s": float,
    "workers": int,
    "out_dir": str,
}

DEFAULTS = {
    "master_seed": 20260515,
    "seeds": 12,
    "dgps": ("A", "B"),
    "feature_sets": ("F0", "F1"),
    "arms": ("C0", "C1", "C2", "C3"),
    "s_values": (0.4, 0.6, 0.8, 0.9),
    "n_train": 25000,
    "n_valid": 10000,
    "n_test": 10000,
    "pi": 0.05,
    "p_noise": 120,
    "rho": 0.5,
    "dgp_a.sigma_u": 1.0,
    "dgp_a.sigma_v": 0.5,
    "dgp_a.sigma_eps": 0.1,
    "dgp_a.beta": 4.0,
    "dgp_b.mu_e": 3.0,
    "dgp_b.sigma_e": 1.0,
    "dgp_b.sigma_v": 0.5,
    "dgp_b.phi": 5.0,
    "dgp_b.s0": 0.5,
    "dgp_b.beta": 4.0,
    "train.num_rounds": 400,
    "train.learning_rate": 0.1,
    "train.max_depth": 6,
    "train.reg_lambda": 1.0,
    "train.gamma": 0.0,
    "train.min_child_weight": 1.0,
    "train.row_subsample": 1.0,
    "train.early_stop_patience": 25,
    "boundary.sigma_u_grid": (0.25, 0.5, 1.0, 2.0),
    "boundary.s": 0.4,
    "workers": 0,
    "out_dir": "results",
}

VALID_ARMS = ("C0", "C1", "C2", "C3")


class ConfigError(ValueError):
    pass


def parse_config_text(text: str) -> dict:
    out = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _SCHEMA:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        try:
            out[key] = _SCHEMA[key](value)
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: bad value for {key}: {exc}") from exc
    return out


@dataclass(frozen=True)
class HarnessConfig:
    raw: dict = field(default_factory=dict)

    def __getitem__(self, key: str):
        return self.raw[key]

    @property
    def sizes(self) -> SplitSizes:
        return SplitSizes(self.raw["n_train"], self.raw["n_valid"],
                          self.raw["n_test"])

    @property
    def distractors(self) -> DistractorParams:
        return DistractorParams(p_noise=self.raw["p_noise"],
                                rho=self.raw["rho"])

    def dgp_params(self, dgp: str):
        """Raw (uncalibrated) parameters for one generator."""
        if dgp == "A":
            return DgpAParams(sigma_u=self.raw["dgp_a.sigma_u"],
                              sigma_v=self.raw["dgp_a.sigma_v"],
                              sigma_eps=self.raw["dgp_a.sigma_eps"],
                              beta=self.raw["dgp_a.beta"])
        if dgp == "B":
            return DgpBParams(mu_e=self.raw["dgp_b.mu_e"],
                              sigma_e=self.raw["dgp_b.sigma_e"],
                              sigma_v=self.raw["dgp_b.sigma_v"],
                              phi=self.raw["dgp_b.phi"],
                              s0=self.raw["dgp_b.s0"],
                              beta=self.raw["dgp_b.beta"])
        raise ConfigError(f"unknown dgp {dgp!r}")

    def train_config(self, seed: int = 0, **colsample) -> TrainConfig:
        return TrainConfig(
            num_rounds=self.raw["train.num_rounds"],
            learning_rate=self.raw["train.learning_rate"],
            max_depth=self.raw["train.max_depth"],
            reg_lambda=self.raw["train.reg_lambda"],
            gamma=self.raw["train.gamma"],
            min_child_weight=self.raw["train.min_child_weight"],
            row_subsample=self.raw["train.row_subsample"],
            early_stop_patience=self.raw["train.early_stop_patience"],
            seed=seed,
            **colsample,
        )

    def validated(self) -> "HarnessConfig":
        if self.raw["seeds"] < 1:
            raise ConfigError("seeds must be >= 1")
        for dgp in self.raw["dgps"]:
            if dgp not in ("A", "B"):
                raise ConfigError(f"unknown dgp {dgp!r}")
        for fs in self.raw["feature_sets"]:
            if fs not in ("F0", "F1"):
                raise ConfigError(f"unknown feature set {fs!r}")
        for arm in self.raw["arms"]:
            if arm not in VALID_ARMS:
                raise ConfigError(f"unknown arm {arm!r}")
        for s in self.raw["s_values"]:
            if not 0.0 < s <= 1.0:
                raise ConfigError("s values must be in (0, 1]")
        if not 0.0 < self.raw["pi"] < 1.0:
            raise ConfigError("pi must be in (0, 1)")
        self.dgp_params("A")
        self.dgp_params("B")
        self.train_config()
        return self


def load_config(path=None, overrides: dict | None = None) -> HarnessConfig:
    raw = dict(DEFAULTS)
    if path is not None:
        with open(path) as fh:
            raw.update(parse_config_text(fh.read()))
    if overrides:
        for key, value in overrides.items():
            if key not in _SCHEMA:
                raise ConfigError(f"unknown key {key!r}")
            raw[key] = value
    return HarnessConfig(raw=raw).validated()


def config_with(cfg: HarnessConfig, **overrides) -> HarnessConfig:
    raw = dict(cfg.raw)
    for key, value in overrides.items():
        if key not in _SCHEMA:
            raise ConfigError(f"unknown key {key!r}")
        raw[key] = value
    return HarnessConfig(raw=raw).validated()


def write_config(path, cfg: HarnessConfig) -> None:
    lines = []
    for key in _SCHEMA:
        value = cfg.raw[key]
        if isinstance(value, tuple):
            value = ",".join(str(v) for v in value)
        lines.append(f"{key} = {value}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
