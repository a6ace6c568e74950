"""Core error types and the run pipeline."""
