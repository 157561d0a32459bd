from .constructions import (
    construct_case_a,
    construct_case_b,
    construct_case_c,
    construct_normal_form,
    elem2_parametrize,
    shape_from_q2,
)
from .maps import (
    FAIL,
    PASS,
    UNVERIFIED,
    BirationalMap,
    Hypersurface,
    MapStep,
    Verification,
    compose,
    compose_all,
    identity_map,
    step_map,
    verify_parametrization,
)
from .quadrics import parametrize_quadric_with_point
