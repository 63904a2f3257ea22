# flake8: noqa
from .base import AppAPIView, AppViewMixin, NonAuthenticatedAPIMixin
