"""Core services: exact arithmetic, classification, solvers, generators and reports."""
