"""Simulation scenarios and their results"""

# License: MIT

import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from ..groups import ConstructionSpec
from ..utils import check_alpha

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

SUBGROUP = "subgroup"
MONTE_CARLO = "monte_carlo"
_METHOD_ALIASES = {
    "subgroup": SUBGROUP,
    "exactsubgroup": SUBGROUP,
    "exact": SUBGROUP,
    "montecarlo": MONTE_CARLO,
    "mc": MONTE_CARLO,
}

CONFIG_KEYS = ("n", "p", "mu_value", "prop_false", "alpha", "method", "reps",
               "seed", "n_draws", "strategy", "size", "pool_size")


@dataclass(frozen=True)
class Scenario:
    """
    One simulation setting of the Gaussian location model.

    Parameters
    ----------
    n : int
        Number of observations.

    p : int
        Number of hypotheses.

    mu_value : float
        Mean of the false hypotheses, non-negative.

    prop_false : float
        Fraction of false hypotheses in [0, 1]. The first
        ``round(prop_false * p)`` columns get mean ``mu_value``.

    alpha : float, (default 0.05)
        Familywise error level.

    method : {'subgroup', 'monte_carlo'}, (default 'monte_carlo')
        Reference set of the maxT method.

    n_draws : int, (default 1000)
        Monte Carlo elements M, identity included. Ignored for subgroups.

    construction : ConstructionSpec, optional
        Subgroup to build. Required for the subgroup method.

    reps : int, (default 1000)
        Number of repetitions.

    seed : int, (default 0)
        Base seed. Repetition r draws from the stream ``(seed, r)``.
    """

    n: int
    p: int
    mu_value: float
    prop_false: float = 1.0
    alpha: float = 0.05
    method: str = MONTE_CARLO
    n_draws: int = 1000
    construction: Optional[ConstructionSpec] = None
    reps: int = 1000
    seed: int = 0

    def __post_init__(self):
        method = _METHOD_ALIASES.get(
            str(self.method).replace("_", "").replace("-", "").lower())
        if method is None:
            raise ValueError(
                f"method must be '{SUBGROUP}' or '{MONTE_CARLO}', "
                f"not {self.method!r}"
            )
        object.__setattr__(self, "method", method)
        if self.n < 1 or self.p < 1:
            raise ValueError("n and p must be positive integers")
        if self.mu_value < 0:
            raise ValueError("mu_value must be non-negative")
        if not 0 <= self.prop_false <= 1:
            raise ValueError("prop_false must lie in [0, 1]")
        check_alpha(self.alpha)
        if self.reps < 1:
            raise ValueError("reps must be at least 1")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a non-negative 64-bit integer")
        if method == SUBGROUP:
            if self.construction is None:
                raise ValueError("The subgroup method needs a construction")
            if self.construction.n != self.n:
                raise ValueError(
                    f"Construction is for n={self.construction.n}, "
                    f"scenario has n={self.n}"
                )
        elif self.n_draws < 1:
            raise ValueError("n_draws must be at least 1")

    @property
    def k(self):
        """Number of false hypotheses."""
        return int(round(self.prop_false * self.p))

    @property
    def means(self):
        """Column means, ``mu_value`` on the first k columns."""
        mu = np.zeros(self.p)
        mu[:self.k] = self.mu_value
        return mu

    @property
    def reference_size(self):
        """Number of reference elements M."""
        if self.method == SUBGROUP:
            return self.construction.target_size
        return self.n_draws

    def label(self):
        if self.method == SUBGROUP:
            return f"{self.construction.strategy}_{self.reference_size}"
        return f"{MONTE_CARLO}_{self.n_draws}"

    @classmethod
    def from_dict(cls, config):
        """
        Builds a scenario from flat configuration keys.

        Parameters
        ----------
        config : dict
            Keys among ``n, p, mu_value, prop_false, alpha, method, reps,
            seed, n_draws, strategy, size, pool_size``.

        Returns
        -------
        scenario : Scenario

        Raises
        ------
        ValueError
            On unknown or missing keys, or invalid values.
        """
        unknown = sorted(set(config) - set(CONFIG_KEYS))
        if unknown:
            raise ValueError(f"Unknown configuration keys: {unknown}")
        missing = [key for key in ("n", "p", "mu_value") if key not in config]
        if missing:
            raise ValueError(f"Missing configuration keys: {missing}")

        config = dict(config)
        strategy = config.pop("strategy", None)
        size = config.pop("size", None)
        pool_size = config.pop("pool_size", None)
        if size is not None or strategy is not None:
            if size is None:
                raise ValueError("A subgroup strategy needs a size")
            kwargs = {} if pool_size is None else {"pool_size": pool_size}
            config["construction"] = ConstructionSpec(
                n=int(config["n"]), target_size=int(size),
                strategy=strategy or "nested", **kwargs,
            )
            config.setdefault("method", SUBGROUP)
        return cls(**config)

    def to_dict(self):
        """Flat configuration keys, the inverse of :meth:`from_dict`."""
        config = {
            "n": self.n,
            "p": self.p,
            "mu_value": self.mu_value,
            "prop_false": self.prop_false,
            "alpha": self.alpha,
            "method": self.method,
            "reps": self.reps,
            "seed": self.seed,
        }
        if self.method == SUBGROUP:
            config["strategy"] = self.construction.strategy
            config["size"] = self.construction.target_size
            config["pool_size"] = self.construction.pool_size
        else:
            config["n_draws"] = self.n_draws
        return config


@dataclass(frozen=True)
class PowerResult:
    """
    Estimated power and familywise error of a scenario.

    Attributes
    ----------
    power : float
        Mean over repetitions of the fraction of false hypotheses rejected,
        0 when there are none.

    fwer : float
        Fraction of repetitions with at least one true hypothesis rejected.

    se_power, se_fwer : float
        Standard errors.

    runtime : float
        Wall time in seconds.

    scenario : Scenario
    """

    power: float
    fwer: float
    se_power: float
    se_fwer: float
    runtime: float
    scenario: Scenario = field(repr=False)


def load_scenario(path):
    """
    Reads a scenario from a TOML or JSON file.

    The file holds the keys of :meth:`Scenario.from_dict`, either at the top
    level or in a ``scenario`` table.

    Parameters
    ----------
    path : str or pathlib.Path
        A ``.toml`` or ``.json`` file.

    Returns
    -------
    scenario : Scenario
    """
    path = Path(path)
    suffix = path.suffix.lower()
    if suffix == ".toml":
        with open(path, "rb") as f:
            config = tomllib.load(f)
    elif suffix == ".json":
        with open(path) as f:
            config = json.load(f)
    else:
        raise ValueError(
            f"Config files must end in .toml or .json, not {path.name}"
        )
    if set(config) == {"scenario"} and isinstance(config["scenario"], dict):
        config = config["scenario"]
    return Scenario.from_dict(config)
