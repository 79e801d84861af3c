from src.sphere.functionals import (
    Functional,
    InfimumEstimate,
    delta,
    mu,
    sphere_oracle,
    xi,
)
