from pathlib import Path

import dj_database_url
import environ
from corsheaders.defaults import default_headers

# General
# ------------------------------------------------------------------------------
ROOT_DIR = Path(__file__).resolve().parent.parent.parent
APPS_DIR = ROOT_DIR / "apps"

# Environment Helpers
# ------------------------------------------------------------------------------
env = environ.Env()
env.read_env(str(ROOT_DIR / ".env"))

SECRET_KEY = env.str("DJANGO_SECRET_KEY", default="django-insecure-bridge-estimation-local-key")
DEBUG = env.bool("DJANGO_DEBUG", default=False)
ALLOWED_HOSTS = env.list("DJANGO_ALLOWED_HOSTS", default=["*"])

# CSRF
# ------------------------------------------------------------------------------
CSRF_TRUSTED_ORIGINS = ["http://localhost"]

# Timezone & Localization
# ------------------------------------------------------------------------------
LANGUAGE_CODE = "en-us"
TIME_ZONE = "UTC"
USE_I18N = True
USE_TZ = True

# Apps
# ------------------------------------------------------------------------------
DJANGO_APPS = [
    "django.contrib.auth",
    "django.contrib.contenttypes",
]

THIRD_PARTY_APPS = [
    # rest api
    "rest_framework",
    "corsheaders",
]

CUSTOM_APPS = [
    "apps.common",
    "apps.bridge_sim",
    "apps.path_statistics",
    "apps.bias_analytics",
    "apps.bayes",
    "apps.mc_harness",
    "apps.cli",
]

INSTALLED_APPS = DJANGO_APPS + THIRD_PARTY_APPS + CUSTOM_APPS

# Middlewares
# ------------------------------------------------------------------------------
MIDDLEWARE = [
    "django.middleware.security.SecurityMiddleware",
    "corsheaders.middleware.CorsMiddleware",
    "django.middleware.common.CommonMiddleware",
]

# Urls
# ------------------------------------------------------------------------------
ROOT_URLCONF = "config.urls"
WSGI_APPLICATION = "config.wsgi.application"
APPEND_SLASH = True

# Database
# ------------------------------------------------------------------------------
DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"
DATABASES = {
    "default": dj_database_url.config(default=f"sqlite:///{ROOT_DIR / 'db.sqlite3'}"),
}

# Api & Rest Framework
# ------------------------------------------------------------------------------
REST_FRAMEWORK = {
    "DEFAULT_PARSER_CLASSES": [
        "rest_framework.parsers.JSONParser",
    ],
    "DEFAULT_RENDERER_CLASSES": [
        "rest_framework.renderers.JSONRenderer",
    ],
    "DEFAULT_PERMISSION_CLASSES": [
        "rest_framework.permissions.AllowAny",
    ],
    "DEFAULT_AUTHENTICATION_CLASSES": [],
    "UNAUTHENTICATED_USER": None,
}

CORS_ORIGIN_ALLOW_ALL = True
CORS_ALLOW_HEADERS = [*default_headers]

# Celery
# ------------------------------------------------------------------------------
if USE_TZ:
    CELERY_TIMEZONE = TIME_ZONE
CELERY_BROKER_URL = env.str("CELERY_BROKER_URL", default="redis://localhost:6379/0")
CELERY_RESULT_BACKEND = CELERY_BROKER_URL
CELERY_ACCEPT_CONTENT = ["json"]
CELERY_TASK_SERIALIZER = "json"
CELERY_RESULT_SERIALIZER = "json"
CELERY_TASK_ALWAYS_EAGER = env.bool("CELERY_TASK_ALWAYS_EAGER", default=False)
CELERY_TASK_EAGER_PROPAGATES = True

# Logging
# ------------------------------------------------------------------------------
LOG_LEVEL = env.str("LOG_LEVEL", default="INFO")
LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            "format": "%(levelname)s %(asctime)s %(name)s %(process)d %(message)s",
        },
    },
    "handlers": {
        "console": {
            "level": "DEBUG",
            "class": "logging.StreamHandler",
            "formatter": "verbose",
        },
    },
    "root": {"level": "WARNING", "handlers": ["console"]},
    "loggers": {
        "apps": {"level": LOG_LEVEL, "handlers": ["console"], "propagate": False},
    },
}

# App Configurations
# ------------------------------------------------------------------------------
BRIDGE_QUADRATURE_REL_TOL = env.float("BRIDGE_QUADRATURE_REL_TOL", default=1e-10)
BRIDGE_QUADRATURE_ABS_TOL = env.float("BRIDGE_QUADRATURE_ABS_TOL", default=1e-12)
BRIDGE_SINGULARITY_WIDTH = env.float("BRIDGE_SINGULARITY_WIDTH", default=1e-6)
BRIDGE_WORKERS = env.int("BRIDGE_WORKERS", default=1)
BRIDGE_N_PATHS = env.int("BRIDGE_N_PATHS", default=10_000)
BRIDGE_N_GRID = env.int("BRIDGE_N_GRID", default=300)
BRIDGE_JEFFREYS_UPPER = env.float("BRIDGE_JEFFREYS_UPPER", default=1000.0)
BRIDGE_POSTERIOR_TOL = env.float("BRIDGE_POSTERIOR_TOL", default=1e-8)
BRIDGE_OUTPUT_DIR = env.str("BRIDGE_OUTPUT_DIR", default=str(ROOT_DIR / "output"))
