"""RealSurf package: exact classification of real algebraic surfaces."""
