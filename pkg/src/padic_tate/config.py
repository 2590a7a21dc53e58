"""Session configuration and the three baked-in reference fields."""
from __future__ import annotations

from dataclasses import asdict, dataclass

from .localfield import LocalFieldParams
from .padic import DEFAULT_PRECISION, PadicContext, padic_context


@dataclass(frozen=True)
class SessionConfig:
    ell: int
    e: int
    p: int = 5
    n_root: int = 4
    M: int | None = None
    precision: int = DEFAULT_PRECISION
    cap: int = 10 ** 6
    seed: int = 0

    @property
    def label(self) -> str:
        return f"l={self.ell},e={self.e}"

    def params(self) -> LocalFieldParams:
        return LocalFieldParams(self.ell, self.e, self.p, self.n_root, self.M, cap=self.cap)

    def padic(self) -> PadicContext:
        P = self.params()
        return padic_context(self.p, P.M, P.q, self.precision)

    def to_json(self) -> dict:
        out = asdict(self)
        out["M"] = self.params().M
        return out


# n_root is the smallest value that every suite needs: the transforms of the
# random functions and the duality groups pair into l^{n_root}-th roots.
REFERENCE_CONFIGS: tuple[SessionConfig, ...] = (
    SessionConfig(ell=3, e=1, p=5, n_root=4),
    SessionConfig(ell=3, e=2, p=5, n_root=3),
    SessionConfig(ell=2, e=3, p=5, n_root=4),
)
