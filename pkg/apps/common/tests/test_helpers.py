import math

from django.test import SimpleTestCase
from pydantic import ValidationError

from apps.bridge_sim.domain import BridgeParams
from apps.common.exceptions import DegenerateFractionExceeded, DomainError, TailMassTooLarge
from apps.common.helpers import json_safe


class JsonSafeTests(SimpleTestCase):
    def test_non_finite_floats_become_none(self):
        value = {"a": math.nan, "b": [1.0, math.inf, (2, -math.inf)], "c": "x"}
        self.assertEqual(json_safe(value), {"a": None, "b": [1.0, None, [2, None]], "c": "x"})


class ExceptionTests(SimpleTestCase):
    def test_as_dict(self):
        exc = TailMassTooLarge("too much mass", tail_mass_bound=0.2, support_upper=5.0)
        self.assertEqual(
            exc.as_dict(),
            {"error": "tail_mass_too_large", "detail": "too much mass", "tail_mass_bound": 0.2, "support_upper": 5.0},
        )

    def test_default_message_is_the_code(self):
        self.assertEqual(DegenerateFractionExceeded().as_dict()["detail"], "degenerate_fraction_exceeded")

    def test_domain_errors_are_value_errors(self):
        self.assertTrue(issubclass(DomainError, ValueError))
        with self.assertRaises(ValueError):
            BridgeParams(alpha=-1.0)

    def test_domain_models_are_frozen(self):
        params = BridgeParams(alpha=1.0)
        with self.assertRaises(ValidationError):
            params.alpha = 2.0
        with self.assertRaises(ValidationError):
            BridgeParams(alpha=1.0, beta=2.0)
