"""Phase-space toolbox tour: torus Hilbert space, translation operators,
and the chord representation of a density matrix.

Run:  python3 demos/01_phase_space_basics.py
"""

import numpy as np

import torusecho as te


def main():
    N = 64
    space = te.TorusSpace(N)
    print(f"Torus Hilbert space: N = {N}, hbar = 1/(2 pi N) = {space.hbar:.6f}")
    print(f"Smallest resolvable purity (maximally mixed floor): 1/N = {1 / N}")

    # A coherent state is a Gaussian wave packet on the torus.
    psi = te.coherent_state(space, 0.25, 0.5)
    rho = te.projector(psi)
    print(f"\nCoherent state at (q,p) = (0.25, 0.50): norm = "
          f"{np.linalg.norm(psi.amplitudes):.12f}, purity = {te.purity(rho):.12f}")

    # Translations form a projective representation: composing two picks up
    # a phase but never changes the physical displacement.
    t1 = te.translation_operator(space, 3, 5)
    t2 = te.translation_operator(space, -1, 2)
    product = t1 @ t2
    combined = te.translation_operator(space, 2, 7)
    phase = np.trace(product @ combined.conj().T) / N
    print(f"\nT(3,5) T(-1,2) = phase * T(2,7), phase = {phase:.6f} "
          f"(|phase| = {abs(phase):.12f})")

    # The chord transform expands rho over all translations; Parseval says
    # the squared coefficients sum to the purity.
    coeffs = te.chord_transform(rho)
    parseval = float(np.sum(np.abs(coeffs.coeffs) ** 2))
    print(f"\nChord transform: sum |coeff|^2 = {parseval:.12f} "
          f"(= purity {te.purity(rho):.12f})")

    back = te.inverse_chord_transform(coeffs)
    print(f"Inverse chord transform: max reconstruction error = "
          f"{np.abs(back.elements - rho.elements).max():.2e}")


if __name__ == "__main__":
    main()
