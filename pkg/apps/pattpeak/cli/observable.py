import logging

LOGGER = logging.getLogger(__name__)


class CheckObservable(object):
    """Reports each finished verification check to registered observers.

    Callbacks are called as `callback(observable, index=..., result=...)`
    where `index` is the position of the check in its suite.
    """

    def __init__(self, total: int = 0):
        self._observers = dict()
        self._total = total
        self._completed = 0

    @property
    def total(self) -> int:
        return self._total

    @property
    def completed(self) -> int:
        return self._completed

    def register(self, observer, callback=None):
        LOGGER.debug(f"Registering {repr(observer)} to check results")
        if callback is None:
            callback = getattr(observer, 'update')
        self._observers[observer] = callback

    def unregister(self, observer):
        LOGGER.debug(f"Unregistering {repr(observer)} from check results")
        del self._observers[observer]

    def check_done(self, index: int, result) -> None:
        self._completed += 1
        LOGGER.debug(f"Check {self._completed}/{self._total} done: {result.label}")
        for observer, callback in self._observers.items():
            callback(self, index=index, result=result)

    def __str__(self):
        return f"<CheckObservable completed={self._completed}/{self._total}>"
