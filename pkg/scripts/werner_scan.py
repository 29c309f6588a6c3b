"""Tabulate Bell fidelity, CHSH value and teleportation F_AV across Werner weights.

Shows why one Werner weight cannot match both the reported resource fidelity
(0.945) and the reported CHSH value (2.703).
"""
import numpy as np

from rspsim.elements import ResourceModel, bell_phi_minus, realize_resource
from rspsim.linalg import fidelity
from rspsim.protocol import ProtocolConfig, channel_of
from rspsim.tomography import avg_fidelity, chsh, process_tomography


def main():
    print(f"{'p':>7} {'F_bell':>8} {'S':>8} {'F_AV':>8}")
    for p in np.linspace(0.80, 1.0, 11):
        model = ResourceModel.werner(p)
        rho = realize_resource(model)
        favg = avg_fidelity(process_tomography(channel_of(ProtocolConfig(model), "0H")))
        print(f"{p:7.4f} {fidelity(bell_phi_minus(), rho):8.4f} {chsh(rho):8.4f} {favg:8.4f}")
    p_s = 2.703 / (2 * np.sqrt(2))
    print(f"\nS=2.703 needs p={p_s:.4f} -> F_bell={(1 + 3 * p_s) / 4:.4f}")
    p_f = (4 * 0.945 - 1) / 3
    print(f"F_bell=0.945 needs p={p_f:.4f} -> S={2 * np.sqrt(2) * p_f:.4f}")


if __name__ == "__main__":
    main()
