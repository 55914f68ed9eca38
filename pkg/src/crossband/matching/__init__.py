from crossband.matching.costs import (
    COST_FUNCTIONS,
    CostVolume,
    census_cost_volume,
    fill_out_of_frame,
    sad_cost_volume,
    zncc_cost_volume,
)
from crossband.matching.pipeline import MatchResult, MatcherConfig, match_images, match_pair
from crossband.matching.sgm import DIRECTIONS, SgmParams, sgm_aggregate
from crossband.matching.wta import left_right_check, wta_disparity

__all__ = [
    "COST_FUNCTIONS", "CostVolume", "DIRECTIONS", "MatchResult", "MatcherConfig", "SgmParams",
    "census_cost_volume", "fill_out_of_frame", "left_right_check", "match_images", "match_pair",
    "sad_cost_volume", "sgm_aggregate", "wta_disparity", "zncc_cost_volume",
]
