"""Graph geometrization toolkit: dimension raising, minors, homology proxies,
coloring bounds and higher-dimensional discharging."""

__version__ = "0.1.0"
