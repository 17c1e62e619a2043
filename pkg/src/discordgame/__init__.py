"""Quantum advantage from discord in a modified CHSH Bayesian game."""
from .discord import SearchSettings, discord_A, discord_B, discord_curve
from .game import StrategyProfile, decompose, f_classical, f_closed_form, f_quantum, modified_game
from .optimize import BoxConstraints, OptimizerSettings, maximize, run_scenario
from .quantum import DetectorSetting, bell_state, discorded_state

__all__ = [
    "BoxConstraints",
    "DetectorSetting",
    "OptimizerSettings",
    "SearchSettings",
    "StrategyProfile",
    "bell_state",
    "decompose",
    "discord_A",
    "discord_B",
    "discord_curve",
    "discorded_state",
    "f_classical",
    "f_closed_form",
    "f_quantum",
    "maximize",
    "modified_game",
    "run_scenario",
]
