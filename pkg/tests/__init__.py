"""Tests package for the quiver workbench."""
