"""Finite presentations of pivotal categories and their builders."""
from .base import AxiomError, MorphismVec, NotTensorComplete, PivotalCategory, SubcategorySpec
from .datum import CategoryDatum, build_graded_vect, build_trivial, build_z3_zeta
from .smod import (
    ModuleMap,
    SuperModule,
    SuperModuleCategory,
    build_exterior_smod,
    build_lambda2,
    build_lambda3_twisted,
    free_module,
    trivial_module,
    twisted_module,
)
from .closure import closure, factors_through, ideal_closure, retract_witness, tensor_dual_closure
from .hull import HullMap, SumHull
from .validate import ValidationReport, check_shapes, validate_category
from .textio import ParseError, dump_datum, load_datum, read_datum, write_datum
