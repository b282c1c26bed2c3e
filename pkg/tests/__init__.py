"""Test package for sshc-sim."""
