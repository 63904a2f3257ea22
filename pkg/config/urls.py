"""
URL configuration of the bridge estimation service.

    api/v1/analytics/expected-mle/   E_α[α̂] and the bias of the MLE
    api/v1/analytics/correct/        bias-corrected MLE
    api/v1/analytics/posterior/      posterior mean and median for a path
    api/v1/experiments/              Monte Carlo studies
"""

from django.urls import include, path

urlpatterns = [
    path("api/v1/analytics/", include("apps.bias_analytics.urls")),
    path("api/v1/analytics/", include("apps.bayes.urls")),
    path("api/v1/experiments/", include("apps.mc_harness.urls")),
]
