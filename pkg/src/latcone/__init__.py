"""latcone: exact lattice, cone, and monoid combinatorics for
boundary-marked curve classes."""

from .comb import (
    CombData,
    FreenessReport,
    LiftResult,
    MinimalMonoidResult,
    SmoothingProfile,
    VERDICT_DEGREE_CONSISTENT_ONLY,
    VERDICT_FAILS,
    VERDICT_LIFTS,
    build_system,
    center_freeness,
    lift_contact_vector,
    minimal_monoid,
    smoothing_profile,
)
from .cones import Cone, ConeError, ShapeFlags, cone_from_inequalities, enumerate_bounded, hilbert_basis
from .dfchart import AdmissibleClass, CurveClass, DFChart, contact_order, enumerate_admissible, is_admissible
from .fsmonoid import (
    ColimitResult,
    FsMonoid,
    MonoidDiagram,
    MonoidMorphism,
    SharpenResult,
    dual_monoid,
    fs_colimit,
    monoid_equal,
    saturate,
    sharpen,
    zero_preimage_trivial,
)
from .intlattice import (
    CokernelStructure,
    IntMatrix,
    SmithDecomposition,
    SpanReport,
    Vector,
    cokernel_structure,
    kernel_basis,
    snf,
    span_report,
)
from .wonderful import (
    ADJOINT,
    ClassifiedClass,
    Color,
    HypothesisReport,
    IsogenyInvariants,
    RootSystem,
    SIMPLY_CONNECTED,
    SphericalData,
    build_root_system,
    check_hypotheses,
    classify_curve_classes,
    distinguished_chart,
    dominant_chamber_cone,
    group_wonderful_data,
    isogeny_invariants,
    verify_group_classification,
)

__version__ = "0.1.0"
