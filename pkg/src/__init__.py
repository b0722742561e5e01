"""DMP Workbench - distillation for membership privacy and the attacks it defends against."""

__version__ = "1.0.0"
__author__ = "DMP Workbench Team"
