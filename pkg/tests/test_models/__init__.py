"""Test modules for model classes."""
