"""Resource caps. Runaway computations fail loudly instead of truncating.

Every cap can be overridden through an environment variable so that the CLI
and the test-suite share one knob set:

    SEPINV_PAIR_CAP    maximum S-pairs processed in one Groebner run
    SEPINV_DEGREE_CAP  maximum total degree of any intermediate term
    SEPINV_GROUP_CAP   maximum group order during closure enumeration
    SEPINV_ENUM_CAP    maximum field size for element enumeration
    SEPINV_POINT_CAP   maximum number of ambient points scanned in point checks
"""

import os
from dataclasses import dataclass


def _env_int(name, default):
    raw = os.environ.get(name)
    if raw is None:
        return default
    return int(raw)


@dataclass(frozen=True)
class Caps:
    pair_cap: int = 500_000
    degree_cap: int = 96        # must stay below 128: exponents are packed in bytes
    group_cap: int = 4096
    enum_cap: int = 2 ** 16
    point_cap: int = 2 ** 20


def from_env():
    return Caps(
        pair_cap=_env_int("SEPINV_PAIR_CAP", Caps.pair_cap),
        degree_cap=min(_env_int("SEPINV_DEGREE_CAP", Caps.degree_cap), 127),
        group_cap=_env_int("SEPINV_GROUP_CAP", Caps.group_cap),
        enum_cap=_env_int("SEPINV_ENUM_CAP", Caps.enum_cap),
        point_cap=_env_int("SEPINV_POINT_CAP", Caps.point_cap),
    )


DEFAULT = from_env()
