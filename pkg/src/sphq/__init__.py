"""Exact-arithmetic engine for spherelike objects over bound quiver algebras."""

__version__ = "0.1.0"
