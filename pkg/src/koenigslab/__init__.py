"""koenigslab: a numerical laboratory for non-elliptic disk semigroups.

Closed-form conformal models of planar domains convex in the positive
direction drive the flow phi_t = h^{-1}(h + t); on top of them the package
computes backward orbits, hyperbolic lengths and distances, quasi-geodesic
certificates, boundary-distance ratios, landing classifications, and the
conformal invariants (harmonic measure, Groetzsch modulus, discrete extremal
length) used to cross-check them.
"""

from .boundary import RatioSeries, delta_split, ratio_series, split_boundary
from .certifier import (
    ComparisonConstants,
    QGCertificate,
    certify,
    explicit_constants,
    validate_constants,
)
from .classify import ConvergenceReport, boundary_arcs, classify
from .hyperbolic import (
    CurveSegment,
    density_disk,
    density_omega,
    distance_lemma_bounds,
    hyp_length,
    k_disk,
    k_omega,
    level_distance,
)
from .invariants import (
    Arc,
    GridDomain,
    beurling_gap,
    extremal_distance_fd,
    extremal_distance_grotzsch,
    grotzsch_mu,
    harmonic_measure_arc,
    nt_criterion,
)
from .models import (
    AffineOfModel,
    HalfPlane,
    KoenigsModel,
    ModelSpec,
    SlitPlane,
    Strip,
    TwoSlit,
    boundary_distance,
    build_model,
    contains,
    h_deriv,
    h_eval,
    h_inverse,
)
from .semigroup import (
    OrbitSample,
    StepReport,
    backward_orbit,
    backward_orbit_identity_check,
    forward_trajectory,
    generator,
    hyperbolic_step,
    lipschitz_check,
    phi,
    spectral_value,
)

__version__ = "0.1.0"
