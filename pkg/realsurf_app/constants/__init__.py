"""Constants shared across the RealSurf package."""
