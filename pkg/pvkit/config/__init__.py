"""
Configuration: environment settings and the bundled fixture registry.
"""
