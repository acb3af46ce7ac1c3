"""Validation package: class checks and coloring searches for bound quiver algebras."""
