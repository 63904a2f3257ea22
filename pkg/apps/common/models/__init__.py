# flake8: noqa
from .config import COMMON_BLANK_AND_NULLABLE_FIELD_CONFIG
from .base import BaseModel
