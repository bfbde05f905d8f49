"""Services used by the classification manager."""
