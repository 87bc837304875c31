"""Exact integer max-plus algebra toolkit.

Scalars and matrices over Z with signed infinities, semilinear sets with
exact membership/intersection/projection, rational semimodule spans with
residuation witnesses, reachability and observability of max-plus linear
systems, a timed-event-graph compiler, and the min-plus automaton gallery.
"""

from .tropical import (
    MAXPLUS,
    MINPLUS,
    NEG_INF,
    POS_INF,
    BudgetExceeded,
    FlavorError,
    FormatError,
    ShapeError,
    TropilinearError,
    TropMatrix,
    dot,
    format_matrix,
    mat_add,
    mat_mul,
    mat_vec,
    parse_matrix,
    pattern,
    residual_left,
    tadd,
    tmul,
    tquot,
    vec_add,
    vec_mul,
    vec_scale,
)
from .diophantine import LinSystem, feasible_solution, hilbert_basis, min_solutions
from .semilinear import (
    LinearSet,
    SemilinearSet,
    empty_set,
    equal_on_box,
    format_set,
    intersect,
    linear_set,
    member,
    msum,
    normalize,
    parse_set,
    project,
    canonical,
    singleton,
    star,
    union,
)
from .spans import (
    BOUND_EXHAUSTED,
    GeneratorSet,
    SpanWitness,
    direct_image,
    finite_gens,
    inverse_image_member,
    minus_member,
    ortho_member,
    reduce_generators,
    semilinear_gens,
    span_member,
    span_member_semilinear,
    transpose_member,
)
from .dynamics import (
    CongruenceBasis,
    CyclicityCertificate,
    DetectionFailed,
    LtiSystem,
    class_max,
    congruent,
    control_solve,
    format_system,
    nondecreasing_augment,
    obs_k,
    obs_omega,
    parse_system,
    reach_k,
    reach_omega,
    simulate,
)
from .teg import TegModel, compile_teg, parse_teg, render_teg, tandem_line_model
from .gallery import (
    WordAutomaton,
    extended_automaton,
    fig_cs_points,
    simon_automaton,
    simon_growth,
    simon_s,
)
from .viz import RenderSpec, project_exponential, project_orthogonal, render

__version__ = "0.1.0"
