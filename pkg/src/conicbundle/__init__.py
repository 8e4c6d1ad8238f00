"""Exact plane quintics with an odd theta characteristic and cubic threefolds containing a line."""
