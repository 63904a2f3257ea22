from django.urls import path

from apps.bias_analytics.views import CorrectMleAPIView, ExpectedMleAPIView

app_name = "bias_analytics"

urlpatterns = [
    path("expected-mle/", ExpectedMleAPIView.as_view(), name="expected-mle"),
    path("correct/", CorrectMleAPIView.as_view(), name="correct"),
]
