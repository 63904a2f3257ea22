from django.apps import AppConfig


class McHarnessConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "apps.mc_harness"
