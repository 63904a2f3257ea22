from pydantic import ValidationError as DomainValidationError
from rest_framework import serializers

from apps.bias_analytics.serializers import ObservationEndField
from apps.bridge_sim.domain import SamplePath, TimeGrid
from apps.common.config import ENERGY_RULES
from apps.common.serializers import AppSerializer


class PosteriorSerializer(AppSerializer):
    """
    Input of `POST analytics/posterior/`: an observed path on the unit horizon
    and the prior. Without `times` the values are taken on the uniform grid
    over [0, T] with both endpoints.
    """

    prior = serializers.ChoiceField(choices=["jeffreys", "uniform"])
    T = ObservationEndField()
    upper = serializers.FloatField(required=False, min_value=0.0)
    tol = serializers.FloatField(required=False, min_value=0.0, max_value=1.0)
    rule = serializers.ChoiceField(choices=ENERGY_RULES, default="rectangle")
    values = serializers.ListField(child=serializers.FloatField(), min_length=2)
    times = serializers.ListField(child=serializers.FloatField(), required=False)
    include_density = serializers.BooleanField(default=False)

    def validate(self, attrs):
        times = attrs.get("times")
        try:
            if times is None:
                grid = TimeGrid.uniform(attrs["T"], len(attrs["values"]))
            else:
                grid = TimeGrid(times=tuple(times))
            attrs["path"] = SamplePath(grid=grid, values=tuple(attrs["values"]))
        except DomainValidationError as exc:
            raise serializers.ValidationError({"values": [error["msg"] for error in exc.errors()]}) from exc

        if abs(grid.observation_end - attrs["T"]) > 1e-12:
            raise serializers.ValidationError({"times": "the last time must equal T"})

        return attrs
