"""Errors, validation, serialization and filename helpers."""
