from django.apps import AppConfig


class BridgeSimConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "apps.bridge_sim"
