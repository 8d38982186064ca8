"""
TRANSDUCTIONS - Search Limits
=============================

Budgets for the exhaustive searches. Values come from config.py when it is
importable (running from src/), otherwise from the fallbacks below.

Functions:
    - resolve_budget: explicit budget, else TRANSDUCER_BUDGET, else the default
    - size_cap: vertex cap for an exact parameter algorithm
    - require_budget, require_size: raise BudgetExceededError when exceeded
"""

import logging
import os
from typing import Optional

from .errors import BudgetExceededError

logger = logging.getLogger(__name__)

try:
    from config import BUDGET_ENV_VAR, BUDGETS, get_search_budget
    _USING_CONFIG = True
except ImportError:
    _USING_CONFIG = False
    BUDGET_ENV_VAR = "TRANSDUCER_BUDGET"

_FALLBACK_CAPS = {
    "DEFAULT_SEARCH_BUDGET": 2 ** 20,
    "MAX_PATHWIDTH_VERTICES": 10,
    "MAX_TREEWIDTH_VERTICES": 10,
    "MAX_TREEDEPTH_VERTICES": 10,
    "MAX_BANDWIDTH_VERTICES": 9,
    "MAX_STAR_COLORING_VERTICES": 12,
    "MAX_COMPONENT_ORDER": 5,
}


def resolve_budget(budget: Optional[int] = None) -> int:
    """Search budget: the argument, else the environment, else the default."""
    if budget is not None:
        if budget < 1:
            raise ValueError(f"Budget must be a positive integer, got {budget}")
        return int(budget)
    if _USING_CONFIG:
        return get_search_budget()
    raw = os.environ.get(BUDGET_ENV_VAR)
    if raw is None:
        return _FALLBACK_CAPS["DEFAULT_SEARCH_BUDGET"]
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{BUDGET_ENV_VAR} must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"{BUDGET_ENV_VAR} must be a positive integer, got {raw!r}")
    return value


def size_cap(name: str) -> int:
    if _USING_CONFIG and hasattr(BUDGETS, name):
        return getattr(BUDGETS, name)
    return _FALLBACK_CAPS[name]


def require_budget(estimate: int, budget: Optional[int], what: str) -> int:
    """Return the resolved budget, or raise if `estimate` exceeds it."""
    limit = resolve_budget(budget)
    if estimate > limit:
        raise BudgetExceededError(f"Refusing {what}", estimate=estimate, budget=limit)
    logger.debug("%s: estimate %d within budget %d", what, estimate, limit)
    return limit


def require_size(n: int, cap_name: str, what: str) -> None:
    cap = size_cap(cap_name)
    if n > cap:
        raise BudgetExceededError(f"{what} is exact only up to {cap} vertices, got {n}")
