"""
Core package: edge extraction, metrics, refinement, batch harness and the CLI handlers.
"""
__version__ = "1.0.0"
