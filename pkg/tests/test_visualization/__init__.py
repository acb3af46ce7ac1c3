"""Test modules for quiver visualization."""
