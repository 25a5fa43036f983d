"""Consent-governed moderated chat: rule engine, pod store, detection,
compliance checking and the chat platform tying them together."""

__version__ = "0.1.0"
