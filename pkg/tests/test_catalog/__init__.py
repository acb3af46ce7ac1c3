"""Test modules for the bundled catalog."""
