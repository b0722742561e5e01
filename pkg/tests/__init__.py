"""Test package for the DMP workbench."""
