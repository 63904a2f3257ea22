from .base import *  # noqa & pylint: disable=wildcard-import

DEBUG = False
SECRET_KEY = env.str("DJANGO_SECRET_KEY")  # noqa: F405
