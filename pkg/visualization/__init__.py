"""
Visualization module for bound quivers.
Provides Graphviz DOT rendering with color-class styling.
"""

from .graph_builder import GraphBuilder

__all__ = ['GraphBuilder']
