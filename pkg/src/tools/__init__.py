"""CLI subcommands of the DMP workbench."""

from . import attack_tools, data_tools, defense_tools, report_tool, sweep_tools, theory_tools, training_tools
from .common import RunContext, Workspace

TOOL_MODULES = [
    data_tools,
    training_tools,
    attack_tools,
    sweep_tools,
    theory_tools,
    defense_tools,
    report_tool,
]


def register_tools(subparsers) -> None:
    """Register every subcommand on an argparse subparsers action."""
    for module in TOOL_MODULES:
        module.register_tool(subparsers)


__all__ = ["RunContext", "Workspace", "TOOL_MODULES", "register_tools"]
