"""Word metrics on Z induced by smooth numbers and unions of power sets."""

__version__ = "0.1.0"

from .generators import GeneratorSet, contains, enumerate_up_to, residue_closure  # noqa: E402
from .engine import (  # noqa: E402
    DEEP_CAPS,
    DIOPHANTINE_CAPS,
    Representation,
    SearchCaps,
    Term,
    ball,
    is_representable,
    length_upper,
    sphere,
    term_universe,
)
from .bounds import LengthBound, length_bound, metric_distance, two_power_scan  # noqa: E402
from .sieve import (  # noqa: E402
    ObstructionCertificate,
    certify_lower,
    coverage_bound,
    delta,
    find_obstruction,
    signed_ball_mod,
)
from .lambdas import LambdaResult, compute_lambda, exclusion_table  # noqa: E402
