from django.test import SimpleTestCase, override_settings

from ibody.jobs import default_jobs, parallel_map


class JobsTests(SimpleTestCase):
    @override_settings(IBODY_JOBS=3)
    def test_default_from_settings(self):
        self.assertEqual(default_jobs(), 3)

    @override_settings(IBODY_JOBS=0)
    def test_default_floor(self):
        self.assertEqual(default_jobs(), 1)

    def test_order_preserved(self):
        items = list(range(-40, 0))
        self.assertEqual(parallel_map(abs, items, jobs=3), [abs(x) for x in items])

    def test_small_batches_stay_serial(self):
        self.assertEqual(parallel_map(str, [3, 1, 2], jobs=8), ['3', '1', '2'])
