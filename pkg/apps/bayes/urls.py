from django.urls import path

from apps.bayes.views import PosteriorAPIView

app_name = "bayes"

urlpatterns = [
    path("posterior/", PosteriorAPIView.as_view(), name="posterior"),
]
