from src.linalg.core import (
    ComplexMatrix,
    ComplexVector,
    HermEigExtremes,
    SvdExtremes,
    adjoint,
    as_matrix,
    as_vector,
    herm_eig_extremes,
    matmul,
    matsub,
    min_gain,
    normality_defect,
    operator_norm,
    scale,
)
