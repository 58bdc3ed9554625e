"""Exact variant most powerful unfalsified models over Ore algebras."""
