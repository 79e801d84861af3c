from src.numerical_range.radius import (
    BoundaryPolyline,
    RadiusResult,
    numerical_radius,
    range_boundary,
    realize_point,
    resolvent_gap,
    spectral_radius,
    support_value,
    support_values,
)
