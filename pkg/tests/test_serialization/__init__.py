"""Test modules for document serialization."""
