from .base import *  # noqa & pylint: disable=wildcard-import

DEBUG = True

# no broker needed locally, studies run inside the request
CELERY_TASK_ALWAYS_EAGER = True

LOGGING["loggers"]["apps"]["level"] = env.str("LOG_LEVEL", default="DEBUG")  # noqa: F405
