"""Python bindings for the hermpir library."""

from ._hermpir import (
    certify,
    cli,
    count_points_hermitian,
    count_points_hyperelliptic,
    format_sig5,
    hermitian_rate,
    hyperelliptic_rate,
    pir_roundtrip,
    rational_rate,
    render_table,
    run_suite,
    suite_names,
)

__all__ = [
    "certify",
    "cli",
    "count_points_hermitian",
    "count_points_hyperelliptic",
    "format_sig5",
    "hermitian_rate",
    "hyperelliptic_rate",
    "pir_roundtrip",
    "rational_rate",
    "render_table",
    "run_suite",
    "suite_names",
]
