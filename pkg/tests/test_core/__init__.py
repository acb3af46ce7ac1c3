"""Test modules for the core engines."""
