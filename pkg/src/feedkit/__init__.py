"""Relations with fail and unknown, instantaneous and unit-delay feedback."""

from .domains import (BOT, FAIL, DomainError, FeedkitError, Signature, SignatureError,
                      WireDomain, bool_domain, bottom, chain_bound, format_point,
                      int_domain, leq, lt, maximal)
from .feedback import (DoubleShape, FeedbackShape, FeedbackTree, det_fixpoint, fb_hide,
                       feedback_tree, inst_feedback, seq_feedback, side_conditions)
from .rfu import (Rfu, compose_serial, cross, demonic_choice, equivalent, fail_rfu,
                  identity, normalize, parallel, refines, rewire, star_bounded, wp)
from .sts import PrefixSemantics, Sts, delay_feedback, legal_prefixes, refine_prefix, \
    refine_sts_onestep, sts_step
from .transformers import (Spec, fb_hide_pt, inst_feedback_pt, miracle_free, refine_spec,
                           seq_spec)

__version__ = "0.1.0"

__all__ = [
    "BOT",
    "DomainError",
    "DoubleShape",
    "FAIL",
    "FeedbackShape",
    "FeedbackTree",
    "FeedkitError",
    "PrefixSemantics",
    "Rfu",
    "Signature",
    "SignatureError",
    "Spec",
    "Sts",
    "WireDomain",
    "bool_domain",
    "bottom",
    "chain_bound",
    "compose_serial",
    "cross",
    "delay_feedback",
    "demonic_choice",
    "det_fixpoint",
    "equivalent",
    "fail_rfu",
    "fb_hide",
    "fb_hide_pt",
    "feedback_tree",
    "format_point",
    "identity",
    "inst_feedback",
    "inst_feedback_pt",
    "int_domain",
    "legal_prefixes",
    "leq",
    "lt",
    "maximal",
    "miracle_free",
    "normalize",
    "parallel",
    "refine_prefix",
    "refine_spec",
    "refine_sts_onestep",
    "refines",
    "rewire",
    "seq_feedback",
    "seq_spec",
    "side_conditions",
    "star_bounded",
    "sts_step",
    "wp",
]
