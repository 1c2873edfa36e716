"""Criterion results shared between test_acceptance.py and the conftest summary hook."""

RESULTS: dict = {}
