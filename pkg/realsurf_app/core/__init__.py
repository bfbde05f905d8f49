"""Exact domain logic: polynomials, Möbius maps, manifolds, surfaces and forms."""
