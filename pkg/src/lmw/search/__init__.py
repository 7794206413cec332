"""Model and formula generators, countermodel search and property suites."""
