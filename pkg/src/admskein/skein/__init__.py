"""Skein module presentations over finite pivotal data."""
from .presentation import SkeinPresentation, refine, tensor_presentations
from .traces import (
    GENERATOR_RESTRICTED,
    LoopCertificate,
    TraceSpace,
    annulus_HH0,
    cyclicity_defects,
    disc_closed_skein,
    loop_class,
    loop_independence_certificate,
    mtrace_space,
    nl_relations,
    nr_relations,
    partial_trace_defects,
    sphere_skein,
    trace_space,
)
from .surface import (
    AdmissibilityError,
    HomSpace,
    InducedMap,
    Label,
    SurfaceSpec,
    boundary_value,
    cokernel_dim,
    cylinder_hom,
    default_schedule,
    disc_skein,
    disjoint_union,
    interval_skein,
    skein_on_morphism,
    surface_skein,
)
from .exactness import (
    NonprojectiveResult,
    ProjectivePresentation,
    check_exact,
    glue_disc_map,
    projective_presentation,
    skein_nonprojective,
)
from .twisted import TwistedReport, joint_eigenspaces, socle, split_bifunctor, twisted_loop_pipeline
