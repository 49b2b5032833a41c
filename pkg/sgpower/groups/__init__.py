from .signflip import (compose, leak, apply, classify,
                       sample_uniform_signflip, full_signflip_group,
                       Subgroup, ORACLE, NONPOSITIVE, GENERAL)
from .construction import (sylvester_oracle, nonpositive_from_oracle,
                           nested_chain, greedy_extend, ConstructionSpec)
from .io import format_subgroup, parse_subgroup, read_subgroup, write_subgroup

__all__ = [
    "compose",
    "leak",
    "apply",
    "classify",
    "sample_uniform_signflip",
    "full_signflip_group",
    "Subgroup",
    "ORACLE",
    "NONPOSITIVE",
    "GENERAL",
    "sylvester_oracle",
    "nonpositive_from_oracle",
    "nested_chain",
    "greedy_extend",
    "ConstructionSpec",
    "format_subgroup",
    "parse_subgroup",
    "read_subgroup",
    "write_subgroup",
    ]
