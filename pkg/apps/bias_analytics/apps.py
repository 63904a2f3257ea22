from django.apps import AppConfig


class BiasAnalyticsConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "apps.bias_analytics"
