from dataclasses import asdict, dataclass


@dataclass(frozen=True)
class Config:
    """Bounds shared by every computation; echoed into every report."""

    depth: int = 30
    monoid_cap: int = 64
    horizon: int = 10_000
    pc_cap: int = 12
    zmul_cap: int = 128
    # number of support points inspected before extrapolating a supremum
    mu_window: int = 8

    def as_dict(self):
        return asdict(self)


DEFAULT = Config()
