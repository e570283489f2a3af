"""Orlicz sequence spaces on Z^d and cosine operators of weighted translations."""
from .criteria import (CriterionReport, PreconditionError, Verdict, check_direct_sum,
                       check_mixing, check_transitive, choose_partition,
                       criterion_quantity)
from .expr import ParseError, parse_expr, to_source
from .group import (AperiodicityError, is_aperiodic, separation_index, translate)
from .kernels import BACKEND
from .ops import Weight, WeightedTranslation
from .seq import (FinSupSeq, luxemburg_norm, modular, orlicz_norm,
                  orlicz_norm_dual_bound)
from .witness import build_vk, verify_witness
from .young import (YoungFunction, conjugate, is_delta2, paper_entropy, paper_exp,
                    power, preset, square)

__version__ = "0.1.0"

__all__ = [
    "AperiodicityError", "BACKEND", "CriterionReport", "FinSupSeq", "ParseError",
    "PreconditionError", "Verdict", "Weight", "WeightedTranslation", "YoungFunction",
    "build_vk", "check_direct_sum", "check_mixing", "check_transitive",
    "choose_partition", "conjugate", "criterion_quantity", "is_aperiodic", "is_delta2",
    "luxemburg_norm", "modular", "orlicz_norm", "orlicz_norm_dual_bound",
    "paper_entropy", "paper_exp", "parse_expr", "power", "preset", "separation_index",
    "square", "to_source", "translate", "verify_witness",
]
