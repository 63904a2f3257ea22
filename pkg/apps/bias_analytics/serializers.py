from rest_framework import serializers

from apps.common.serializers import AppSerializer


class ObservationEndField(serializers.FloatField):
    """Observation end T, strictly inside (0, 1)."""

    default_error_messages = {"open_interval": "T must lie strictly between 0 and 1."}

    def to_internal_value(self, data):
        value = super().to_internal_value(data)
        if not 0.0 < value < 1.0:
            self.fail("open_interval")
        return value


class ExpectedMleSerializer(AppSerializer):
    """Input of `POST analytics/expected-mle/`."""

    alpha = serializers.FloatField(min_value=0.0)
    T = ObservationEndField()
    rel_tol = serializers.FloatField(required=False, min_value=1e-14, max_value=1e-2)


class CorrectMleSerializer(AppSerializer):
    """Input of `POST analytics/correct/`."""

    observed = serializers.FloatField()
    T = ObservationEndField()
