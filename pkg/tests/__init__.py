"""Test package for unit tests."""
