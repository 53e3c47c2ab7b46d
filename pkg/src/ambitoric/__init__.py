"""Ambitoric ansatz geometry.

Exact rational core (quadratics, Mobius gauge, ansatz validation), numeric
tensor evaluation and curvature, moment maps with their fold conics,
boundary distance analysis, and completability classification.
"""

from .quadratics import (
    OO,
    Mobius,
    Poly,
    Quadratic,
    Quartic,
    conic_type,
    inner,
    rat,
    transvectant2,
)
from .ansatz import (
    AnsatzSpec,
    BoxComponent,
    Interval,
    MetricChoice,
    METRIC_G0,
    METRIC_GPLUS,
    METRIC_GMINUS,
    ValidationError,
    conformal_factor,
    fibre_volume,
    metric_gp,
    mobius_transport,
    validate,
)
from .tensors import FIELDS, FramePoint, curvature, eval_field
from .moment import (
    Conic,
    LineInTstar,
    MomentError,
    MomentPoint,
    Polygon,
    convexity_check,
    delzant_check,
    fold_conic,
    identify_t,
    level_set_line,
    moment_map,
    p_image_line,
)
from .boundary import (
    DistanceStatus,
    compatible_quadratic,
    corner_status,
    decompose_boundary,
    edge_status,
    estimate_r,
    fold_status,
)
from .classify import (
    Verdict,
    classify,
    complete_orbifold_check,
    completability_verdict,
)
from .special import (
    CSCData,
    KerrParams,
    csc_construct,
    kerr,
    scalar_closed_form,
    standard_polygon,
)

__version__ = "0.1.0"
