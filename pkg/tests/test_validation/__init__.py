"""Test modules for algebra classification."""
