from django.apps import AppConfig


class PathStatisticsConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "apps.path_statistics"
