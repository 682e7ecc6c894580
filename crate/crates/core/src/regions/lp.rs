use alloc::vec::Vec;

const EPS: f64 = 1e-12;

/// Whether some convex combination of `gens` is coordinatewise `<= b`.
///
/// Solves `max Σ λ` subject to `Σ λ_i g_i <= b`, `Σ λ <= 1`, `λ >= 0` with a
/// dense simplex from the slack basis (feasible because `b >= 0`), using
/// Bland's rule. The hull point exists iff the optimum reaches 1.
pub(super) fn dominates_hull(gens: &[[f64; 3]], b: [f64; 3]) -> bool {
    if b.iter().any(|&v| v < 0.0) {
        return false;
    }
    let k = gens.len();
    let cols = k + 4;
    // rows 0..3: generator coordinates, row 3: Σλ <= 1, row 4: objective
    let mut t = alloc::vec![alloc::vec![0.0; cols + 1]; 5];
    for (i, g) in gens.iter().enumerate() {
        for r in 0..3 {
            t[r][i] = g[r];
        }
        t[3][i] = 1.0;
        t[4][i] = -1.0;
    }
    for r in 0..4 {
        t[r][k + r] = 1.0;
        t[r][cols] = if r < 3 { b[r] } else { 1.0 };
    }
    let mut basis: Vec<usize> = (k..k + 4).collect();
    for _ in 0..10_000 {
        let Some(enter) = (0..cols).find(|&c| t[4][c] < -EPS) else {
            break;
        };
        let mut leave = None;
        let mut best = f64::INFINITY;
        for r in 0..4 {
            if t[r][enter] > EPS {
                let ratio = t[r][cols] / t[r][enter];
                let better = ratio < best - EPS
                    || (ratio <= best + EPS && leave.is_some_and(|l: usize| basis[r] < basis[l]));
                if better {
                    best = ratio;
                    leave = Some(r);
                }
            }
        }
        let Some(lr) = leave else { break };
        let piv = t[lr][enter];
        for c in 0..=cols {
            t[lr][c] /= piv;
        }
        for r in 0..5 {
            if r != lr {
                let f = t[r][enter];
                if f != 0.0 {
                    for c in 0..=cols {
                        t[r][c] -= f * t[lr][c];
                    }
                }
            }
        }
        basis[lr] = enter;
    }
    t[4][cols] >= 1.0 - 1e-9
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segment_midpoint() {
        let g = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]];
        assert!(dominates_hull(&g, [0.5, 0.5, 0.0]));
        assert!(!dominates_hull(&g, [0.5, 0.4, 0.0]));
        assert!(dominates_hull(&g, [0.3, 0.7, 1.0]));
    }

    #[test]
    fn triangle_centroid() {
        let g = [[3.0, 0.0, 0.0], [0.0, 3.0, 0.0], [0.0, 0.0, 3.0]];
        assert!(dominates_hull(&g, [1.0, 1.0, 1.0]));
        assert!(!dominates_hull(&g, [1.0, 1.0, 0.99]));
    }
}
