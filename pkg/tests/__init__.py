"""
Tests for the cyclicweights library
"""
