"""Rewriting of open graphs: presheaves, structured cospans, double-pushout
rules, a square calculus, and a ZX-calculus rule pack."""

__version__ = "0.1.0"

from .adjunction import Interface, graph_interface
from .colimits import (
    Complement,
    PullbackResult,
    PushoutResult,
    Subobject,
    coproduct,
    enumerate_complements,
    pullback,
    pushout,
    pushout_complement,
    sub_enumerate,
    sub_join,
    sub_meet,
)
from .cospans import (
    FeetMismatch,
    StructuredCospan,
    compose,
    cospan_iso_search,
    empty_cospan,
    identity_cospan,
    open_graph,
    tensor,
    twist,
)
from .presheaf import (
    Morphism,
    Presheaf,
    canonical_key,
    check_morphism,
    graph,
    hom_enumerate,
    identity,
    iso_search,
    validate_presheaf,
)
from .rewriting import (
    AmbiguousComplement,
    Derivation,
    GluingViolation,
    Grammar,
    Rule,
    Step,
    apply_rule,
    concat_derivations,
    derivation_search,
    find_matches,
    one_step,
)
from .schema import GRAPH, RGRAPH, SET, Schema
from .squares import (
    SquareRep,
    VerticalArrow,
    bold_equivalent,
    h_compose,
    interchange_check,
    square_iso_search,
    tensor_square,
    v_compose,
)
from .zx import (
    NodeType,
    Phase,
    ZXDiagram,
    builtin_rules,
    dagger,
    decat_equal,
    generator,
    load_rule_pack,
    phase_add,
    zx_apply,
    zx_compose,
    zx_one_step,
    zx_simplify,
    zx_tensor,
)
