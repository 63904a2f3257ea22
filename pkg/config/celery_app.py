# pylint: disable=no-member
import os

from celery import Celery

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "config.settings")

# Monte Carlo studies queued from the API run here, see apps/mc_harness/tasks.py
app = Celery("bridge_estimation")
app.config_from_object("django.conf:settings", namespace="CELERY")
app.autodiscover_tasks()
