import sgpower.utils
import sgpower.groups
import sgpower.inference
import sgpower.power
import sgpower.simulation  # noqa


__version__ = "0.1.0"
