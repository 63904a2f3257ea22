from apps.bayes.domain import PriorSpec
from apps.bayes.logic.posterior import posterior, posterior_density
from apps.bayes.serializers import PosteriorSerializer
from apps.common.views import AppAPIView, NonAuthenticatedAPIMixin


class PosteriorAPIView(NonAuthenticatedAPIMixin, AppAPIView):
    """Posterior mean and median of α for a path posted inline."""

    serializer_class = PosteriorSerializer

    def post(self, *args, **kwargs):
        data = self.get_valid_serializer().validated_data
        spec = PriorSpec.from_settings(data["prior"], data["T"], data.get("upper"))
        path = data["path"]

        result = posterior(spec, path, data.get("tol"), rule=data["rule"]).model_dump()
        if data["include_density"]:
            result["density"] = posterior_density(spec, path, rule=data["rule"]).rows()

        return self.send_response(data=result)
