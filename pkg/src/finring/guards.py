"""Resource guards.

Every potentially explosive search is gated by one of these limits.  Hitting
a guard raises :class:`finring.errors.GuardExceeded`; results are never
silently truncated.  A ring remembers the guards it was built with and every
module or search derived from it inherits them.
"""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Guards:
    #: largest ring we agree to construct at all
    max_ring_order: int = 4096
    #: largest ring for full ideal-lattice enumeration
    max_lattice_order: int = 1024
    #: largest raw tuple space R^k explored when presenting a module
    max_module_raw: int = 65536
    #: largest candidate count for hom-set style enumerations
    max_hom_candidates: int = 1_000_000
    #: triples sampled when a ring is too big for exhaustive axiom checks
    axiom_sample_count: int = 512
    #: fixed seed for that sampling; reports stay reproducible
    axiom_seed: int = 1729

    def with_overrides(self, **kwargs) -> "Guards":
        kwargs = {k: v for k, v in kwargs.items() if v is not None}
        return replace(self, **kwargs) if kwargs else self


DEFAULT_GUARDS = Guards()
