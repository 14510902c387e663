#!/usr/bin/env python3
"""Print the explicit p = 3 model: the character alpha, the 2-dimensional
beta, and the Weil lift in odd/even coordinates, together with the
Fourier-convention note.

    python3 scripts/explore_sl23.py
"""

from heisweil.linalg import CycMatrix
from heisweil.symplectic import n_element, weyl_element
from heisweil.weil import lift_in_odd_even_basis, sl23_reference, sp_table


def fmt(m: CycMatrix) -> str:
    return "[" + "; ".join(
        ", ".join(f"{e.to_complex():.3f}".replace("j", "i") for e in row)
        for row in m.rows
    ) + "]"


def main() -> None:
    alpha, beta, lift, ref = sl23_reference()
    space = lift.space
    els, _, _ = sp_table(space)
    jel = weyl_element(space)
    n1 = n_element(space, [[1]])

    print("normalization scalar c =", lift.normalization, "=", f"{lift.normalization.to_complex():.4f}")
    print("reading of the printed beta(j) that assembles into a homomorphism:",
          ref.displayed_j_reading)
    print()
    print("printed matrix  [[i/sqrt3, 2i/sqrt3], [i/sqrt3, -i/sqrt3]]:")
    print("   ", fmt(ref.beta_j_displayed))
    m = lift_in_odd_even_basis(ref, jel.inverse())
    even = CycMatrix(12, [[m[1, 1], m[1, 2]], [m[2, 1], m[2, 2]]])
    print("even block of the lift at the inverse Weyl element:")
    print("   ", fmt(even))
    print()
    print("character table on SL(2,3) (trace of the lift = alpha + tr beta):")
    seen = set()
    for s in els:
        tr = lift.sp_images[ref.translate(s)].trace()
        key = tr
        if key in seen:
            continue
        seen.add(key)
        print(
            f"  element {s.matrix.tolist()}  trace {tr.to_complex():.3f}"
            f"  alpha {alpha[s][0, 0].to_complex():.3f}"
            f"  tr beta {beta[s].trace().to_complex():.3f}"
        )
    print()
    print("generator operators (odd/even basis):")
    for name, el in (("n(1)", n1), ("j", jel), ("j^-1", jel.inverse())):
        print(f"  {name}:", fmt(lift_in_odd_even_basis(ref, el)))


if __name__ == "__main__":
    main()
