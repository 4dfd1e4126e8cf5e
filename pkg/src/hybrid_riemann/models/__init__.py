from .euler import Euler
from .mhd import IdealMHD
from .r13 import R13, power_iteration_radius
from .scalar import Burgers, LinearAdvection, LinearSystem

MODELS = {
    "advection": LinearAdvection,
    "burgers": Burgers,
    "euler": Euler,
    "mhd": IdealMHD,
    "r13": R13,
}


def make_model(name, **params):
    try:
        cls = MODELS[name]
    except KeyError:
        raise ValueError(f"unknown model {name!r}; choose from {sorted(MODELS)}") from None
    return cls(**params)


__all__ = [
    "Burgers",
    "Euler",
    "IdealMHD",
    "LinearAdvection",
    "LinearSystem",
    "MODELS",
    "R13",
    "make_model",
    "power_iteration_radius",
]
