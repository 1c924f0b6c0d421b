"""Side-by-side table of the printed constants and the recomputed ones, for both reduction modes."""

from narayana_repdigits.baker import initial_bounds
from narayana_repdigits.numeric import DEFAULT_BUDGET
from narayana_repdigits.pipeline import (
    CF_EXTRA_TERMS,
    PAPER_M,
    _discrepancies,
    _power_of_ten_at_least,
    run_stage1,
    run_stage2,
)
from narayana_repdigits.reduction import expand_cf
from narayana_repdigits.sequence import tau


def reduction_row(label, M, paper):
    cf = expand_cf(tau, 6 * M, DEFAULT_BUDGET, extra=CF_EXTRA_TERMS)
    s1 = run_stage1(cf, M, DEFAULT_BUDGET)
    s2 = run_stage2(cf, M, s1["m1_bound"], 250, DEFAULT_BUDGET, paper)
    print(
        f"{label:<8s} M=1e{len(str(M)) - 1}  stage1 eps={float(s1['eps_min']):.7f} m1<={s1['m1_bound']}  "
        f"stage2 eps={float(s2['eps_min']):.3g} (d2<d1: {float(s2['eps_min_paper_family']):.3g}) n<={s2['n_bound']}"
    )


def main():
    ib = initial_bounds()
    print(f"{'quantity':<15s} {'recomputed':>24s} {'printed':>9s} {'ratio':>9s}")
    for row in _discrepancies(ib, DEFAULT_BUDGET):
        print(f"{row['quantity']:<15s} {row['artifact']:>24s} {row['paper']:>9s} {row['ratio']:>9s}")
    print()
    reduction_row("printed", PAPER_M, True)
    reduction_row("native", _power_of_ten_at_least(ib.m_sum_bound), False)


if __name__ == "__main__":
    main()
