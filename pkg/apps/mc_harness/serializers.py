from pydantic import ValidationError as DomainValidationError
from rest_framework import serializers

from apps.common.config import EXPERIMENT_CONFIG
from apps.common.serializers import AppReadOnlyModelSerializer, AppSerializer
from apps.mc_harness.domain import ExperimentConfig
from apps.mc_harness.models import ExperimentRun


class ExperimentCreateSerializer(AppSerializer):
    """
    Input of `POST experiments/`. Omitted fields fall back to the `BRIDGE_*`
    settings and the study defaults.
    """

    alphas = serializers.ListField(child=serializers.FloatField(min_value=0.0), required=False, min_length=1)
    T = serializers.FloatField(required=False)
    n_paths = serializers.IntegerField(required=False, min_value=1)
    n_grid = serializers.IntegerField(required=False, min_value=2)
    estimators = serializers.ListField(
        child=serializers.ChoiceField(choices=EXPERIMENT_CONFIG["estimators"]), required=False, min_length=1
    )
    seed = serializers.IntegerField(required=False, min_value=0)
    generator = serializers.ChoiceField(choices=["exact", "euler"], required=False)

    def validate(self, attrs):
        overrides = {**attrs, "observation_end": attrs.pop("T", None)}
        try:
            attrs["config"] = ExperimentConfig.from_settings(**overrides)
        except DomainValidationError as exc:
            raise serializers.ValidationError([error["msg"] for error in exc.errors()]) from exc

        return attrs

    def create(self, validated_data):
        return ExperimentRun.objects.create(config=validated_data["config"].model_dump(mode="json"))


class ExperimentRunSerializer(AppReadOnlyModelSerializer):
    class Meta:
        model = ExperimentRun
        fields = [
            "uuid",
            "created",
            "modified",
            "status",
            "config",
            "summary",
            "comparison",
            "degenerate_counts",
            "tail_mass_counts",
            "error",
        ]
