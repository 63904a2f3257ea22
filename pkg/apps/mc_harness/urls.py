from django.urls import path

from apps.mc_harness.views import ExperimentCreateAPIView, ExperimentDetailAPIView

app_name = "mc_harness"

urlpatterns = [
    path("", ExperimentCreateAPIView.as_view(), name="create"),
    path("<uuid:uuid>/", ExperimentDetailAPIView.as_view(), name="detail"),
]
