"""E2E tests for the sshc command line."""
