"""The named-identity registry shipped with the package."""

from __future__ import annotations

from collections.abc import Mapping
from functools import lru_cache
from importlib import resources

from .terms import Identity, parse_identity

__all__ = ["Registry", "load_registry", "default_registry", "resolve"]

# conjunctions stored as several identities
GROUPS = {
    "I4": ("I4a", "I4b"),
    "tech": ("tech-left", "tech-right"),
    "KS": ("KS1", "KS2"),
}


class Registry(Mapping):
    """Immutable ``name -> Identity`` map, in file order."""

    def __init__(self, entries):
        self._entries = dict(entries)

    def __getitem__(self, name: str) -> Identity:
        try:
            return self._entries[name]
        except KeyError:
            raise KeyError(f"unknown identity {name!r}") from None

    def __iter__(self):
        return iter(self._entries)

    def __len__(self):
        return len(self._entries)

    def side(self, side: str) -> list[str]:
        return [k for k, v in self._entries.items() if v.side == side]

    def expand(self, names) -> list[str]:
        """Resolve group names (``I4``, ``tech``, ``KS``) to their members."""
        out = []
        for name in names:
            for member in GROUPS.get(name, (name,)):
                self[member]
                if member not in out:
                    out.append(member)
        return out


def parse_registry(text: str) -> Registry:
    entries = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name, sep, body = line.partition(":")
        name = name.strip()
        if not sep or not name:
            raise ValueError(f"line {lineno}: expected 'name: identity'")
        if name in entries:
            raise ValueError(f"line {lineno}: duplicate identity {name!r}")
        entries[name] = parse_identity(body, name=name)
    return Registry(entries)


def load_registry(path=None) -> Registry:
    if path is None:
        text = resources.files("divbimagma").joinpath("data/registry.txt").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    return parse_registry(text)


@lru_cache(maxsize=1)
def default_registry() -> Registry:
    return load_registry()


def resolve(items, registry: Registry | None = None) -> list[Identity]:
    """Turn a mix of names and Identity objects into Identity objects."""
    registry = registry or default_registry()
    out = []
    for item in items:
        if isinstance(item, Identity):
            out.append(item)
        else:
            out.extend(registry[m] for m in registry.expand([item]))
    return out
