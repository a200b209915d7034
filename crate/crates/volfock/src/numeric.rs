//! Log-domain scalar helpers shared across the crate: stable log-sum-exp,
//! golden-section maximization, least-squares slopes and tail statistics.
//!
//! Everything here works on plain `f64` slices so callers decide what the
//! numbers mean (usually `log` of something positive).

/// Golden-section search runs long enough that bracket width is far below
/// any tolerance used in this crate (0.618^60 ~ 3e-13 of the initial width).
pub const GOLDEN_ITERS: usize = 60;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// log(e^a + e^b) without overflow; handles -inf on either side.
pub fn log_add_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// log Σ e^{x_i} with the usual max shift; -inf for an empty slice.
pub fn log_sum_exp(xs: &[f64]) -> f64 {
    let m = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    let sum: f64 = xs.iter().map(|&x| (x - m).exp()).sum();
    m + sum.ln()
}

/// Maximize `f` on `[lo, hi]`. Returns `(argmax, max)`.
///
/// On ties the bracket moves left, so plateaus resolve toward the smaller
/// abscissa.
pub fn golden_section_max(f: impl Fn(f64) -> f64, lo: f64, hi: f64, iters: usize) -> (f64, f64) {
    debug_assert!(lo <= hi);
    let mut a = lo;
    let mut b = hi;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..iters {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    let xm = 0.5 * (a + b);
    let fm = f(xm);
    // Return the best probe seen at the end, not just the midpoint.
    if f1 >= fm && f1 >= f2 {
        (x1, f1)
    } else if f2 > fm {
        (x2, f2)
    } else {
        (xm, fm)
    }
}

/// Least-squares slope of `ys` against `xs`.
pub fn ls_slope(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    assert!(xs.len() >= 2, "slope fit needs at least two samples");
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        num += (x - mx) * (y - my);
        den += (x - mx) * (x - mx);
    }
    num / den
}

/// `points` log-spaced samples on `[r_min, r_max]`, endpoints included.
pub fn log_grid(r_min: f64, r_max: f64, points: usize) -> Vec<f64> {
    assert!(r_min > 0.0 && r_max > r_min && points >= 2);
    let t0 = r_min.ln();
    let t1 = r_max.ln();
    (0..points)
        .map(|i| {
            let t = t0 + (t1 - t0) * i as f64 / (points - 1) as f64;
            t.exp()
        })
        .collect()
}

/// Last `fraction` of a sequence, never fewer than two entries.
pub fn tail<T>(values: &[T], fraction: f64) -> &[T] {
    let n = values.len();
    let take = ((n as f64 * fraction).ceil() as usize).clamp(2, n);
    &values[n - take..]
}

/// Non-increasing within a relative tolerance (upward steps of at most
/// `rel_tol * max(1, |v|)` are forgiven).
pub fn is_nonincreasing(values: &[f64], rel_tol: f64) -> bool {
    values
        .windows(2)
        .all(|w| w[1] <= w[0] + rel_tol * w[0].abs().max(1.0))
}

pub fn is_nondecreasing(values: &[f64], rel_tol: f64) -> bool {
    values
        .windows(2)
        .all(|w| w[1] >= w[0] - rel_tol * w[0].abs().max(1.0))
}

/// Total variation below `rel` of the value scale (with a small absolute floor).
pub fn is_plateau(values: &[f64], rel: f64) -> bool {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    (max - min) <= (rel * max.abs().max(min.abs())).max(1e-12)
}

/// Evidence that the supremum of a sampled quantity over the unbounded tail
/// is finite: the last quarter of the samples is non-increasing, or varies by
/// less than 1% relative.
pub fn tail_sup_finite(values: &[f64]) -> bool {
    let t = tail(values, 0.25);
    is_nonincreasing(t, 1e-10) || is_plateau(t, 0.01)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_add_exp_matches_direct_sum() {
        let v = log_add_exp(0.0, (2.0f64).ln());
        assert!((v - (3.0f64).ln()).abs() < 1e-14);
        assert_eq!(log_add_exp(f64::NEG_INFINITY, 1.5), 1.5);
        assert_eq!(log_add_exp(1.5, f64::NEG_INFINITY), 1.5);
    }

    #[test]
    fn log_sum_exp_shifts_large_args() {
        // 3 * e^1000 in log domain; direct exp would overflow.
        let v = log_sum_exp(&[1000.0, 1000.0, 1000.0]);
        assert!((v - (1000.0 + 3.0f64.ln())).abs() < 1e-12);
        assert_eq!(log_sum_exp(&[]), f64::NEG_INFINITY);
    }

    #[test]
    fn golden_finds_parabola_peak() {
        let (x, v) = golden_section_max(|x| -(x - 2.5) * (x - 2.5), 0.0, 10.0, GOLDEN_ITERS);
        assert!((x - 2.5).abs() < 1e-9);
        assert!(v.abs() < 1e-18);
    }

    #[test]
    fn golden_plateau_resolves_left() {
        let (x, _) = golden_section_max(|_| 1.0, 0.0, 1.0, GOLDEN_ITERS);
        assert!(x < 1e-6);
    }

    #[test]
    fn slope_of_exact_line() {
        let xs: Vec<f64> = (0..20).map(|i| i as f64 * 0.3).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 4.0 - 1.75 * x).collect();
        assert!((ls_slope(&xs, &ys) + 1.75).abs() < 1e-12);
    }

    #[test]
    fn log_grid_hits_endpoints() {
        let g = log_grid(1.0, 50.0, 64);
        assert_eq!(g.len(), 64);
        assert!((g[0] - 1.0).abs() < 1e-12);
        assert!((g[63] - 50.0).abs() < 1e-10);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn tail_rules() {
        let dec: Vec<f64> = (0..40).map(|i| 10.0 - i as f64).collect();
        assert!(tail_sup_finite(&dec));
        let flat = vec![2.0; 40];
        assert!(tail_sup_finite(&flat));
        let inc: Vec<f64> = (0..40).map(|i| i as f64 * i as f64).collect();
        assert!(!tail_sup_finite(&inc));
    }
}
