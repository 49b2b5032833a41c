from .utils import (check_data, check_signs, check_iota, check_alpha,  # noqa
                    canonical_iota, n_allowed_exceedances, is_power_of_two)
from .linalg import rand_sphere  # noqa
from .random import check_generator, substream, resolve_n_jobs  # noqa
from .exceptions import (DimensionError, NotASubgroupError,  # noqa
                         UnsupportedSizeError, ImpossibleSizeError,
                         DomainError)
