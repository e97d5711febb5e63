//! Bounded linear Diophantine equations in two unknowns.
//!
//! The attack's shift equation reduces to `a·x + b·y = c` with lower
//! bounds on both unknowns; coefficients are critical-cycle weights and
//! can be negative or zero. The solver returns the solution minimizing
//! `x` and then `y`, or `None` when none exists, entirely in closed form
//! (no scanning), so the residue loop stays O(1) per candidate.

/// `gcd` and Bézout coefficients: returns `(g, s, t)` with
/// `a·s + b·t = g = gcd(|a|, |b|)`, for any signs of `a`, `b` (not both 0).
pub(crate) fn extended_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

fn floor_div(n: i128, d: i128) -> i128 {
    let q = n / d;
    let r = n % d;
    if r != 0 && ((r < 0) != (d < 0)) {
        q - 1
    } else {
        q
    }
}

pub(crate) fn ceil_div(n: i128, d: i128) -> i128 {
    -floor_div(-n, d)
}

/// Smallest member of the residue class `base + step·ℤ` (step > 0) that
/// is ≥ `lo`.
fn align_up(base: i128, step: i128, lo: i128) -> i128 {
    base + step * ceil_div(lo - base, step)
}

/// Solves `a·x + b·y = c` subject to `x ≥ x_min` and `y ≥ y_min`,
/// returning the lexicographically minimal `(x, y)` (smallest `x`, then
/// smallest `y`) or `None` if infeasible.
pub(crate) fn solve_bounded(
    a: i128,
    b: i128,
    c: i128,
    x_min: i128,
    y_min: i128,
) -> Option<(i128, i128)> {
    match (a == 0, b == 0) {
        (true, true) => (c == 0).then_some((x_min, y_min)),
        (true, false) => {
            if c % b != 0 {
                return None;
            }
            let y = c / b;
            (y >= y_min).then_some((x_min, y))
        }
        (false, true) => {
            if c % a != 0 {
                return None;
            }
            let x = c / a;
            (x >= x_min).then_some((x, y_min))
        }
        (false, false) => {
            let (g, s, _) = extended_gcd(a, b);
            if c % g != 0 {
                return None;
            }
            // Particular solution, then the full family
            // x = x0 + k·(b/g), y = (c - a·x)/b.
            let x0 = s * (c / g);
            let step = (b / g).abs();

            // y is monotone in x with slope -a/b.
            let x = if (a > 0) == (b > 0) {
                // y decreases as x grows: feasible x are bounded above.
                let x_upper = floor_div(c - b * y_min, a);
                let x = align_up(x0, step, x_min);
                if x > x_upper {
                    return None;
                }
                x
            } else {
                // y grows with x: feasibility kicks in past a threshold.
                let x_lower = x_min.max(ceil_div(c - b * y_min, a));
                align_up(x0, step, x_lower)
            };
            let y = (c - a * x) / b;
            debug_assert_eq!(a * x + b * y, c);
            debug_assert!(x >= x_min && y >= y_min);
            Some((x, y))
        }
    }
}
