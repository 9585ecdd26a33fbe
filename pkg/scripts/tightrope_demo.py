#!/usr/bin/env python3
"""Walk the logical tightrope in the CHSH section frame.

Shows that B1 & ~B2 equals B1 (negation of an incompatible proposition is
vacuous), while B1 & (A2 v ~A2) is strictly below B1: excluded middle for
A2 is not available, which is exactly the step the classical derivation of
the CHSH inequality needs.
"""

from qlogic.bell import BellScenario, DEFAULT_ANGLES, build_chsh_frame
from qlogic.hasse import section_label


def show(frame, name, s):
    print(f"{name:<16} = {section_label(frame, s)}")


def main() -> None:
    chsh = build_chsh_frame(BellScenario.from_angles(*DEFAULT_ANGLES))
    frame = chsh.frame
    b1 = chsh.sections["B1"]
    a2 = chsh.sections["A2"]

    print(f"contexts: {list(chsh.model.poset.context_ids)}\n")
    show(frame, "B1", b1)
    show(frame, "~B2", frame.neg(chsh.sections["B2"]))
    step1 = frame.meet([b1, frame.neg(chsh.sections["B2"])])
    show(frame, "B1 & ~B2", step1)
    print(f"B1 & ~B2 == B1?  {step1 == b1}\n")

    em = frame.join([a2, frame.neg(a2)])
    show(frame, "A2 v ~A2", em)
    print(f"A2 v ~A2 == TOP? {em == frame.top()}")
    step2 = frame.meet([b1, em])
    show(frame, "B1 & (A2v~A2)", step2)
    print(f"B1 & (A2 v ~A2) == B1?  {step2 == b1}")
    ctx = chsh.model.obs_context["B1"]
    print(
        f"at context {ctx!r}: B1 gives {sorted(frame.evaluate_at(b1, ctx))}, "
        f"weakened gives {sorted(frame.evaluate_at(step2, ctx))}"
    )


if __name__ == "__main__":
    main()
