"""Command-line surface for RealSurf."""
