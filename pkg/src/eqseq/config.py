import os

DEFAULT_WORK_BUDGET = 10**9
BUDGET_ENV = "EQSEQ_BUDGET"


def default_budget() -> int:
    """Work budget in loop iterations; ``EQSEQ_BUDGET`` overrides the default."""
    raw = os.environ.get(BUDGET_ENV)
    if raw is None or not raw.strip():
        return DEFAULT_WORK_BUDGET
    return int(float(raw))
