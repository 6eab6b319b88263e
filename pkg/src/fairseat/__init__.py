"""Fair allocation of time-conflicting course seats to credit-capped students."""

from .allocators import (
    dp_exact_small,
    ef1cc_round_robin,
    maxmin_augmenting,
    mis_round_robin,
    round_robin,
)
from .audit import audit, audit_ef1, audit_ef1cc, audit_efx, maxmin_value, social_welfare
from .intervals import conflict_set, interval_mis, sort_courses_by_end
from .model import (
    Allocation,
    Binary,
    Course,
    General,
    Instance,
    Student,
    TimeInterval,
    Uniform,
    expand_seats,
    instance_stats,
    overlaps,
    validate_allocation,
)
from .oracle import opt_maxmin, opt_social_welfare, opt_sw_given_maxmin

__version__ = "0.1.0"
