"""CLI, exporters, table cache and OEIS b-file cross-checks."""
