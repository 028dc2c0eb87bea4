"""Link-margin bookkeeping on top of the atmospheric path loss."""

from __future__ import annotations

import math

from ..atmosphere import AtmosphereProfile, total_loss_db
from ..errors import DomainError


def link_margin(
    profile: AtmosphereProfile,
    zenith_deg: float,
    tx_power_dbm: float,
    rx_sensitivity_dbm: float,
    fixed_losses_db: float = 0.0,
) -> float:
    """Margin in dB: transmit power minus all losses minus receiver sensitivity."""
    for name, v in (
        ("tx_power_dbm", tx_power_dbm),
        ("rx_sensitivity_dbm", rx_sensitivity_dbm),
        ("fixed_losses_db", fixed_losses_db),
    ):
        if not math.isfinite(v):
            raise DomainError(f"{name} must be finite")
    atm = total_loss_db(profile, zenith_deg)
    return tx_power_dbm - fixed_losses_db - atm - rx_sensitivity_dbm
