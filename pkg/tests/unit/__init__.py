"""Unit tests for sshc-sim."""
