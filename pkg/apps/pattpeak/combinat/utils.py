import logging
import re


LOGGER = logging.getLogger(__name__)

_SEPARATORS_RE = re.compile(r'[\W_]+')
_CAPITALS_RE = re.compile(r'(?<=[a-z0-9])([A-Z])')


def camel_case(text: str, preserve_capitals: bool = False) -> str:
    """'include_delta' -> 'IncludeDelta'; with `preserve_capitals`,
    'includeDelta' -> 'IncludeDelta' as well."""
    if preserve_capitals:
        text = _CAPITALS_RE.sub(r' \1', text)
    words = _SEPARATORS_RE.sub(' ', text).split()
    return ''.join(w.title() for w in words)


def snake_case(text: str) -> str:
    return _CAPITALS_RE.sub(r'_\1', text).lower()


def all_subclasses(cls) -> set:
    found, stack = set(), [cls]
    while stack:
        for sub in stack.pop().__subclasses__():
            if sub not in found:
                found.add(sub)
                stack.append(sub)
    return found


def subclass_names(cls) -> list:
    """Lookup names of the subclasses of `cls`, e.g. ['row1', 'row2'] for
    ClosedFormRow1 and ClosedFormRow2."""
    prefix = cls.__name__
    return sorted(snake_case(klass.__name__[len(prefix):])
                  for klass in all_subclasses(cls)
                  if klass.__name__.startswith(prefix) and klass is not cls)


def find_subclass(cls, subtype: str, cache: dict = None,
                  preserve_capitals: bool = False):
    """Find the subclass of `cls` named `cls.__name__` + CamelCase(subtype).

    `find_subclass(ClosedForm, 'include_delta')` returns
    `ClosedFormIncludeDelta`. Lookups, including misses, are memoized in
    `cache` when one is given.
    """
    if cache is not None and subtype in cache:
        return cache[subtype]

    search = f"{cls.__name__}{camel_case(subtype, preserve_capitals)}"
    klass = next((k for k in all_subclasses(cls) if k.__name__ == search), None)
    if klass is None:
        LOGGER.debug(f"No subclass {search} of {cls.__name__}")

    if cache is not None:
        cache[subtype] = klass
    return klass
