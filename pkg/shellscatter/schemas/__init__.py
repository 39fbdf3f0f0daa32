from shellscatter.schemas.shell_config import ShellConfig, DoubleShellConfig, ShellConfigPayload
from shellscatter.schemas.scattering import BoundarySide, ChannelResult, CrossSection, Method, OracleComparison, PhaseCurve
from shellscatter.schemas.threshold import CriticalCoupling, Regime, ThresholdReport, ZeroEnergyReport, ZeroEnergySolution
from shellscatter.schemas.spectral import BoundState
from shellscatter.schemas.sweep import Spacing, SweepSpec

__all__ = [
    "ShellConfig",
    "DoubleShellConfig",
    "ShellConfigPayload",
    "BoundarySide",
    "ChannelResult",
    "CrossSection",
    "Method",
    "OracleComparison",
    "PhaseCurve",
    "CriticalCoupling",
    "Regime",
    "ThresholdReport",
    "ZeroEnergyReport",
    "ZeroEnergySolution",
    "BoundState",
    "Spacing",
    "SweepSpec"
]
