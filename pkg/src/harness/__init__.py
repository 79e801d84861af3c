from src.harness.generate import GeneratorSpec, SpectrumLaw, generate, haar_unitary, rng_for
from src.harness.matrix_io import format_complex, parse_complex_literal, parse_matrix, write_matrix
from src.harness.sweep import IdSummary, SweepReport, SweepRunner
