from rest_framework import status

from apps.common.views import AppAPIView, NonAuthenticatedAPIMixin
from apps.mc_harness.models import ExperimentRun
from apps.mc_harness.serializers import ExperimentCreateSerializer, ExperimentRunSerializer
from apps.mc_harness.tasks import run_experiment_task


class ExperimentCreateAPIView(NonAuthenticatedAPIMixin, AppAPIView):
    """Stores a study and queues its execution."""

    serializer_class = ExperimentCreateSerializer

    def post(self, *args, **kwargs):
        run = self.get_valid_serializer().save()
        run_experiment_task.delay(str(run.uuid))
        run.refresh_from_db()

        return self.send_response(data=ExperimentRunSerializer(run).data, status_code=status.HTTP_201_CREATED)


class ExperimentDetailAPIView(NonAuthenticatedAPIMixin, AppAPIView):
    """Status and, once finished, the summary of a study."""

    get_object_model = ExperimentRun

    def get(self, *args, **kwargs):
        return self.send_response(data=ExperimentRunSerializer(self.get_object(identifier="uuid")).data)
