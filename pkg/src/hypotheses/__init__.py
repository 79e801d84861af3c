from src.hypotheses.checks import (
    HypothesisReport,
    RouteResult,
    check_ball,
    check_c_cc,
    check_d_dd_ddd,
    check_e_ee,
    check_defect,
    check_segment,
    check_vector_disk,
    vector_equiv_31_32,
)
from src.hypotheses.fitting import DiskFit, LambdaFit, SegmentFit, fit_disk, fit_lambda, fit_segment
from src.hypotheses.models import (
    CombinationParams,
    DiskParams,
    LambdaRadius,
    ParamSet,
    PriorParams,
    SegmentParams,
)
