"""
Default settings for django-confcat.

These settings provide the bounds and conventions used by every verification
pipeline. Users can override any of these by adding a CONFCAT dictionary to
their Django settings.py.

Example usage in settings.py:
    CONFCAT = {
        "NERVE_CAP": 3,
        "PROBE_DEGREE": 1,
        "ELL_SPAN": 3,
    }
"""

DEFAULT_CONFCAT_SETTINGS = {
    # Simplicial caps
    "NERVE_CAP": 4,  # highest simplicial degree stored for Grothendieck nerves
    "PROBE_DEGREE": 2,  # homology is probed in degrees 0..PROBE_DEGREE
    "CHECKER_CAP": 2,  # degrees up to which the Segal/complete/conservative squares are checked
    # Conservatization bounds
    "ELL_SPAN": 2,  # L ranges over r..r+ELL_SPAN unless --ell-min/--ell-max are given
    "STABILITY_WINDOW": 3,  # consecutive agreeing stages required for STABLE
    "MAX_DEGREE": 1,  # verify simplicial degrees r = 0..MAX_DEGREE
    # Conventions
    "COMPLETENESS_FACE": "d1",  # "d0" flips the completeness square for sensitivity runs
    # Property beta
    "PROPERTY_BETA_EDGE_BUDGET": 64,
    # Groups
    "MAX_GROUP_ORDER_FACTOR": 1,  # closure may reach at most factor * |M|! elements
    # Reporting
    "REPORT_FORMAT": "human",
    "RECORD_RUNS": False,
    "MUTATION_SEED": 0,
}


def get_confcat_setting(key: str, default=None):
    """
    Get a confcat setting with fallback to defaults.

    Args:
        key: Setting key to retrieve
        default: Override default if provided

    Returns:
        Setting value or default
    """
    fallback = DEFAULT_CONFCAT_SETTINGS.get(key) if default is None else default
    try:
        from django.conf import settings

        if settings.configured:
            return getattr(settings, "CONFCAT", {}).get(key, fallback)
        return fallback
    except ImportError:
        # Django not available, return default
        return fallback
