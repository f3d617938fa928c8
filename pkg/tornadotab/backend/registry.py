import typing as tp
from importlib.util import find_spec

from .base import ArrayBackend
from .numpy import NumbaBackend, NumpyBackend
from .precise import DecimalBackend

if tp.TYPE_CHECKING:
    from tornadotab.core.typing import Backend

# backend name -> (module it needs, implementation)
_BACKENDS: dict[str, tuple[str, type[ArrayBackend]]] = {
    "numpy": ("numpy", NumpyBackend),
    "numba": ("numba", NumbaBackend),
    "decimal": ("decimal", DecimalBackend),
}
_DEFAULT_ORDER = ("numba", "numpy")


class BackendsRegistry(dict[str, ArrayBackend]):
    """Registered bound-evaluation backends, keyed by name.

    A new registry holds every backend whose module can be found. The active
    backend is numba when present, numpy otherwise.
    """

    def __init__(self):
        for name in self.available_backends:
            self.register_backend(name)
        self._active = next(name for name in _DEFAULT_ORDER if name in self)

    @property
    def available_backends(self) -> list[str]:
        """Backends whose module is importable, checked without importing it."""
        return [
            name for name, (module, _) in _BACKENDS.items() if find_spec(module)
        ]

    def register_backend(self, backend_name: "Backend"):
        """Instantiate and register one of ``numpy``, ``numba`` or ``decimal``."""
        if backend_name not in self.available_backends:
            raise BackendNotAvailable(
                f"Backend {backend_name!r} cannot be used here: "
                f"known backends with an importable module are "
                f"{self.available_backends}."
            )
        self[backend_name] = _BACKENDS[backend_name][1]()

    def __getitem__(self, name: str) -> ArrayBackend:
        if name not in self:
            raise BackendNotRegistered(
                f"No backend named {name!r} is registered "
                f"(registered: {sorted(self.keys())})."
            )
        return super().__getitem__(name)

    def set_active(self, backend: str):
        self[backend]
        self._active = backend

    @property
    def active(self) -> ArrayBackend:
        return self[self._active]

    def resolve(self, backend: "Backend") -> str:
        """Name of the backend a call with ``backend`` runs on."""
        name = self._active if backend is None else backend
        self[name]
        return name


class BackendNotAvailable(Exception):
    """The module a backend needs is not installed."""


class BackendNotRegistered(Exception):
    """Lookup of a backend name missing from the registry."""
