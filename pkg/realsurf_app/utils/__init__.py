"""Utility helpers for RealSurf."""
