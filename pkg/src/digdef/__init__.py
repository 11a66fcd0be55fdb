"""Embeddability order of finite digraphs, gadget constructions and definability checks."""

__version__ = "0.1.0"
