from apps.bias_analytics.domain import QuadratureSpec
from apps.bias_analytics.logic.expectation import asymptotic_bias, expected_mle
from apps.bias_analytics.logic.inversion import correct_mle
from apps.bias_analytics.serializers import CorrectMleSerializer, ExpectedMleSerializer
from apps.common.views import AppAPIView, NonAuthenticatedAPIMixin


def _quadrature_spec(rel_tol=None) -> QuadratureSpec:
    spec = QuadratureSpec.from_settings()
    return spec.model_copy(update={"rel_tol": rel_tol}) if rel_tol else spec


class ExpectedMleAPIView(NonAuthenticatedAPIMixin, AppAPIView):
    """E_α[α̂] and the bias of the MLE at (α, T)."""

    serializer_class = ExpectedMleSerializer

    def post(self, *args, **kwargs):
        data = self.get_valid_serializer().validated_data
        alpha, T = data["alpha"], data["T"]
        expectation = expected_mle(alpha, T, _quadrature_spec(data.get("rel_tol")))

        return self.send_response(
            data={
                "alpha": alpha,
                "T": T,
                "expectation": expectation,
                "bias": expectation - alpha,
                "asymptotic_bias": asymptotic_bias(T),
            }
        )


class CorrectMleAPIView(NonAuthenticatedAPIMixin, AppAPIView):
    """Bias-corrected MLE of an observed estimate."""

    serializer_class = CorrectMleSerializer

    def post(self, *args, **kwargs):
        data = self.get_valid_serializer().validated_data
        result = correct_mle(data["observed"], data["T"], _quadrature_spec())

        return self.send_response(data=result.model_dump())
