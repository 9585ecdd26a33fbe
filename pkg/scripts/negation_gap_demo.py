#!/usr/bin/env python3
"""Intuitionistic negation on one qubit.

Compares S(Sz, -1) with neg S(Sz, +1): the inequality is strict, and the
gap sits exactly at the incompatible context Sx, where the negation is
vacuously TOP but the direct proposition says nothing.
"""

import numpy as np

from qlogic import QuantumModel
from qlogic.hasse import section_label


def main() -> None:
    model = QuantumModel(
        {
            "Sz": np.array([[1, 0], [0, -1]], dtype=complex),
            "Sx": np.array([[0, 1], [1, 0]], dtype=complex),
        }
    )
    frame = model.frame
    s_minus = frame.embed_elementary(model.elementary("Sz", [-1.0]))
    neg_plus = frame.neg(frame.embed_elementary(model.elementary("Sz", [1.0])))

    print(f"S(Sz,-1)      = {section_label(frame, s_minus)}")
    print(f"neg S(Sz,+1)  = {section_label(frame, neg_plus)}")
    print(f"S(Sz,-1) <= neg S(Sz,+1)?  {frame.leq(s_minus, neg_plus)}")
    print(f"equal?                     {s_minus == neg_plus}")
    for c in model.poset.context_ids:
        v1, v2 = frame.evaluate_at(s_minus, c), frame.evaluate_at(neg_plus, c)
        marker = "  <-- gap" if v1 != v2 else ""
        print(f"  at {c!r}: {sorted(v1)} vs {sorted(v2)}{marker}")


if __name__ == "__main__":
    main()
