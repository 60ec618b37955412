# Littlestone Lab - agnostic online multiclass learning on finite classes
__version__ = "1.0.0"
