"""Tests for src.nncore."""
