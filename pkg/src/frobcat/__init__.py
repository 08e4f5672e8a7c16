"""Comma-category Frobenius pair workbench."""
