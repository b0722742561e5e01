"""Tests for src.dmp."""
