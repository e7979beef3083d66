"""Scripts that derive the shipped data files from first principles."""
