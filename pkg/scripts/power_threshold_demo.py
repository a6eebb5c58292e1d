#!/usr/bin/env python3
"""Walk through the running example matrix B = [[2, 1], [2, -1]].

Shows the first few powers, the strong Perron-Frobenius report, the brute
force positivity threshold, and how exp preserves eventual positivity."""

import numpy as np

from matfrob import (
    Exp,
    eventually_positive_check,
    extract_diagonalizable_structure,
    matrix_function,
    power_threshold,
    strong_pf_check,
)


def main() -> None:
    b = np.array([[2.0, 1.0], [2.0, -1.0]])
    print("B =")
    print(b)
    print()

    power = np.eye(2)
    for k in range(1, 6):
        power = power @ b
        tag = "entrywise positive" if np.all(power > 0) else "has a nonpositive entry"
        print(f"B^{k} ({tag}):")
        print(power.astype(int) if np.allclose(power, power.astype(int)) else power)
    print()

    print(strong_pf_check(b).format_text())
    print()
    print(f"power threshold up to 64: {power_threshold(b, 64)}")
    print()

    report = eventually_positive_check(b)
    print(f"eventually positive: {'yes' if report.overall else 'no'}")
    print()

    factors = extract_diagonalizable_structure(b)
    eb = matrix_function(factors, Exp())
    print("exp(B) =")
    print(eb)
    t = power_threshold(eb, 64)
    print(
        f"exp(B) eventually positive: "
        f"{'yes' if eventually_positive_check(eb).overall else 'no'} "
        f"(power threshold {t})"
    )


if __name__ == "__main__":
    main()
