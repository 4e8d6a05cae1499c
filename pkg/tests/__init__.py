"""Tests for the duplex-schur check suites."""
