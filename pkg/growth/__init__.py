"""Growth under AGI with differential automation costs."""
