from django.urls import reverse
from rest_framework import status
from rest_framework.test import APISimpleTestCase


class ExpectedMleAPITests(APISimpleTestCase):
    def setUp(self):
        self.url = reverse("bias_analytics:expected-mle")

    def test_expectation_and_bias(self):
        response = self.client.post(self.url, {"alpha": 0.5, "T": 0.8}, format="json")

        self.assertEqual(response.status_code, status.HTTP_200_OK)
        body = response.json()
        self.assertEqual(body["status"], "success")
        self.assertAlmostEqual(body["data"]["expectation"], 1.60688, delta=1e-5)
        self.assertAlmostEqual(body["data"]["bias"], 1.10688, delta=1e-5)
        self.assertAlmostEqual(body["data"]["asymptotic_bias"], 1.242670, places=6)

    def test_observation_end_must_be_inside_the_unit_interval(self):
        response = self.client.post(self.url, {"alpha": 0.5, "T": 1.0}, format="json")

        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        body = response.json()
        self.assertEqual(body["status"], "error")
        self.assertEqual(body["action_code"], "DISPLAY_ERROR_MESSAGES")
        self.assertIn("T", body["data"])

    def test_negative_alpha(self):
        response = self.client.post(self.url, {"alpha": -1.0, "T": 0.8}, format="json")
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)


class CorrectMleAPITests(APISimpleTestCase):
    def setUp(self):
        self.url = reverse("bias_analytics:correct")

    def test_interior(self):
        response = self.client.post(self.url, {"observed": 1.60688, "T": 0.8}, format="json")

        self.assertEqual(response.status_code, status.HTTP_200_OK)
        data = response.json()["data"]
        self.assertEqual(data["status"], "interior")
        self.assertAlmostEqual(data["alpha_cmle"], 0.5, delta=1e-4)
        self.assertEqual(data["observation_end"], 0.8)

    def test_clamped(self):
        response = self.client.post(self.url, {"observed": 0.0, "T": 0.8}, format="json")

        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.json()["data"]["status"], "clamped_at_zero")
