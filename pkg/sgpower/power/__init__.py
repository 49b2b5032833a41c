from .quantiles import (EULER_GAMMA, normal_quantile, normal_cdf,
                        gumbel_quantile, GumbelParams,
                        gumbel_params_for_max_gaussian, max_gaussian_quantile,
                        sample_max_gaussian)
from .efficiency import (mu_os, mu_os_asymptotic, mu_h, crossover,
                         EffSignals, relative_efficiency, ORACLE_SIGNAL,
                         FULL_SIGNAL)
from .approximations import (oracle_power, oracle_power_limit,
                             fullgroup_power_approx, GAUSSIAN_LEAK,
                             SPHERE_LEAK)

__all__ = [
    "EULER_GAMMA",
    "normal_quantile",
    "normal_cdf",
    "gumbel_quantile",
    "GumbelParams",
    "gumbel_params_for_max_gaussian",
    "max_gaussian_quantile",
    "sample_max_gaussian",
    "mu_os",
    "mu_os_asymptotic",
    "mu_h",
    "crossover",
    "EffSignals",
    "relative_efficiency",
    "ORACLE_SIGNAL",
    "FULL_SIGNAL",
    "oracle_power",
    "oracle_power_limit",
    "fullgroup_power_approx",
    "GAUSSIAN_LEAK",
    "SPHERE_LEAK",
    ]
