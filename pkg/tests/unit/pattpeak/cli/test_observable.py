import unittest
from unittest import mock

import tests.unit.pattpeak.cli.testenv  # noqa: F401

from apps.pattpeak.cli.observable import CheckObservable
from apps.pattpeak.combinat.verifiers import CheckResult


class TestUnitCheckObservable(unittest.TestCase):

    def test_unit_notifies_registered_observers(self):
        observable = CheckObservable(total=2)
        observer = mock.Mock()
        observable.register(observer)

        result = CheckResult('first', True)
        observable.check_done(0, result)

        observer.update.assert_called_once_with(observable, index=0, result=result)
        self.assertEqual(observable.completed, 1)
        self.assertEqual(str(observable), '<CheckObservable completed=1/2>')

    def test_unit_custom_callback(self):
        observable = CheckObservable(total=1)
        callback = mock.Mock()
        observable.register('reporter', callback=callback)

        observable.check_done(0, CheckResult('only', False))

        callback.assert_called_once()
        self.assertEqual(callback.call_args.kwargs['index'], 0)

    def test_unit_unregister(self):
        observable = CheckObservable(total=2)
        observer = mock.Mock()
        observable.register(observer)
        observable.unregister(observer)

        observable.check_done(0, CheckResult('first', True))

        observer.update.assert_not_called()
        self.assertEqual(observable.completed, 1)


if __name__ == '__main__':
    unittest.main()
