//! Finite-difference and interpolation weights.
//!
//! Weights come from Fornberg's recursion, so any node set and derivative
//! order can be requested; the fixed-order helpers below are what the rest
//! of the crate uses.

/// Weights `w[m][k]` for the `m`-th derivative at `x0` from nodes `xs`,
/// for every `m <= max_order`.
pub fn fornberg(x0: f64, xs: &[f64], max_order: usize) -> Vec<Vec<f64>> {
    let n = xs.len();
    let mut c = vec![vec![0.0; n]; max_order + 1];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = xs[0] - x0;
    for i in 1..n {
        let mn = i.min(max_order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = xs[i] - x0;
        for j in 0..i {
            let c3 = xs[i] - xs[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

/// Integer-offset stencil weights (unit spacing).
pub fn offset_weights(offsets: &[i32], order: usize) -> Vec<f64> {
    let xs: Vec<f64> = offsets.iter().map(|&o| o as f64).collect();
    fornberg(0.0, &xs, order).swap_remove(order)
}

/// Picks a window of `width` consecutive node indices around `i`,
/// shifted inward near the ends of `0..n`.
pub fn window(i: usize, n: usize, width: usize) -> usize {
    let half = width / 2;
    let start = i.saturating_sub(half);
    start.min(n.saturating_sub(width))
}

/// Derivative of order `order` of uniformly sampled data at every node,
/// using a `width`-point stencil (centered in the interior, one-sided near
/// the ends).
pub fn derivative(values: &[f64], h: f64, order: usize, width: usize) -> Vec<f64> {
    let n = values.len();
    assert!(n >= width, "need at least {width} samples");
    let scale = h.powi(order as i32);
    (0..n)
        .map(|i| {
            let s = window(i, n, width);
            let offsets: Vec<i32> = (0..width).map(|k| (s + k) as i32 - i as i32).collect();
            let w = offset_weights(&offsets, order);
            w.iter().zip(&values[s..s + width]).map(|(a, b)| a * b).sum::<f64>() / scale
        })
        .collect()
}

/// Fourth-order first derivative (5-point stencils).
pub fn d1(values: &[f64], h: f64) -> Vec<f64> {
    derivative(values, h, 1, 5)
}

/// Lagrange interpolation weights (and first two derivatives) at `x` for
/// nodes `x_k = x_start + k h`, `k < width`.
pub fn lagrange_weights(x: f64, x_start: f64, h: f64, width: usize) -> [Vec<f64>; 3] {
    let xs: Vec<f64> = (0..width).map(|k| k as f64).collect();
    let t = (x - x_start) / h;
    let mut w = fornberg(t, &xs, 2);
    for v in w[1].iter_mut() {
        *v /= h;
    }
    for v in w[2].iter_mut() {
        *v /= h * h;
    }
    let second = w.pop().unwrap();
    let first = w.pop().unwrap();
    let zeroth = w.pop().unwrap();
    [zeroth, first, second]
}

/// Cumulative integral of uniformly sampled data, fourth-order accurate:
/// composite Simpson on even prefixes, Simpson plus a 3/8 panel on odd ones.
pub fn cumulative_simpson(values: &[f64], h: f64) -> Vec<f64> {
    let n = values.len();
    let mut out = vec![0.0; n];
    let simpson = |a: usize, b: usize| -> f64 {
        // b - a even
        if a == b {
            return 0.0;
        }
        let mut s = values[a] + values[b];
        for k in a + 1..b {
            s += if (k - a) % 2 == 1 { 4.0 } else { 2.0 } * values[k];
        }
        s * h / 3.0
    };
    let three_eighths =
        |a: usize| 3.0 * h / 8.0 * (values[a] + 3.0 * values[a + 1] + 3.0 * values[a + 2] + values[a + 3]);
    for i in 1..n {
        out[i] = if i % 2 == 0 {
            simpson(0, i)
        } else if i >= 3 {
            simpson(0, i - 3) + three_eighths(i - 3)
        } else if n >= 4 {
            // first panel from the cubic through nodes 0..3
            h / 24.0 * (9.0 * values[0] + 19.0 * values[1] - 5.0 * values[2] + values[3])
        } else {
            0.5 * h * (values[0] + values[1])
        };
    }
    out
}
