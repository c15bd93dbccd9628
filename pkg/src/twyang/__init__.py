"""Exact computations in twisted Yangians of types AI and AII."""
