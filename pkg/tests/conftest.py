import sys
from pathlib import Path

from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "ci",
    max_examples=25,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")


def make_point(coords, field=None):
    from fatpoints.fields import QQ
    from fatpoints.geometry import ProjectivePoint

    return ProjectivePoint.make(field or QQ, coords)


def make_scheme(n, items, field=None):
    from fatpoints.fields import QQ
    from fatpoints.schemes import FatPointScheme

    field = field or QQ
    return FatPointScheme.make(
        field, n, [(make_point(c, field), m) for c, m in items]
    )
