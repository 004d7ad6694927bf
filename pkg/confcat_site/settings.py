"""
Django settings for the confcat_site project.

The project only hosts the confcat app: management commands, recorded
verification runs and the test runner. There are no views or URLs.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.2/ref/settings/
"""

import os
from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.environ.get(
    "DJANGO_SECRET_KEY", "django-insecure-confcat-local-verification-only"
)

# SECURITY WARNING: don't run with debug turned on in production!
DEBUG = os.environ.get("DJANGO_DEBUG", "False") == "True"

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    "django.contrib.contenttypes",
    "confcat",
]


# Database
# https://docs.djangoproject.com/en/5.2/ref/settings/#databases

DATABASES = {
    "default": {
        "ENGINE": "django.db.backends.sqlite3",
        "NAME": BASE_DIR / "db.sqlite3",
    }
}


# Internationalization
# https://docs.djangoproject.com/en/5.2/topics/i18n/

LANGUAGE_CODE = "en-us"

TIME_ZONE = "UTC"

USE_I18N = True

USE_TZ = True

# Default primary key field type
# https://docs.djangoproject.com/en/5.2/ref/settings/#default-auto-field

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"


# Logging
LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            "format": "{asctime} {levelname} {name} {message}",
            "style": "{",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "verbose",
        },
    },
    "loggers": {
        "confcat": {
            "handlers": ["console"],
            "level": os.environ.get("CONFCAT_LOG_LEVEL", "WARNING"),
            "propagate": False,
        },
    },
}


# Confcat Settings
CONFCAT = {
    # Simplicial caps
    "NERVE_CAP": 4,
    "PROBE_DEGREE": 2,
    "CHECKER_CAP": 2,
    # L ranges over r..r+ELL_SPAN unless --ell-min/--ell-max are given
    "ELL_SPAN": 2,
    "STABILITY_WINDOW": 3,
    "MAX_DEGREE": 1,
    # Completeness square convention ("d1" or "d0")
    "COMPLETENESS_FACE": "d1",
    "PROPERTY_BETA_EDGE_BUDGET": 64,
    "MAX_GROUP_ORDER_FACTOR": 1,
    # Reporting
    "REPORT_FORMAT": "human",
    "RECORD_RUNS": False,
    "MUTATION_SEED": 0,
}
