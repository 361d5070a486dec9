"""Algebraic universal cycles on the Grassmannian G_q(2, n).

Typical use::

    from grasscycle import make_field, build_cycle, verify_universal

    ctx = make_field(2, 5, [1, 0, 1, 0, 0, 1])   # x^5 + x^2 + 1
    cycle = build_cycle(ctx)                      # reps (3, 4, 8, 16, 1)
    verify_universal(cycle, 2).verdict            # 'universal'
"""

from .cycle import (
    CycleSpec,
    UniversalCycle,
    build_beta_sequence,
    build_cycle,
    build_windows,
    default_representatives,
    validate_spec,
)
from .errors import GrasscycleError
from .field import FieldContext, FieldElement, discrete_log, frobenius, make_field
from .grassmann import Subspace, enumerate_grassmannian, gaussian_binomial, span
from .orbits import (
    MobiusTransform,
    OrbitPartition,
    RatioClass,
    check_noncollapsing,
    collapse_degree,
    enumerate_pgl2,
    galois_orbit,
    mobius_apply,
    orbit_partition,
    pgl_orbit,
    projective_ratio,
)
from .search import SearchResult, SearchTask, search_dual, twist_placements
from .verify import (
    RawSequence,
    VerificationReport,
    read_sequence,
    verify_line_uniformity,
    verify_periodicity,
    verify_universal,
)
from .windows import BACKEND

__version__ = "0.1.0"
