//! Size guards and solver tolerances.

/// Vertex and table-size guards for the exact algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Vertices of AND/OR powers, n-instance graphs and `|X|^n |Y|^n` tables.
    pub product_vertices: usize,
    /// Maximal independent sets, chromatic number and clique number.
    pub exact_vertices: usize,
    /// Per-component induced-subgraph sweep in `is_perfect`.
    pub perfect_vertices: usize,
    /// Positive-mass vertices in the chromatic entropy search.
    pub chromatic_entropy_vertices: usize,
    /// Backtracking isomorphism.
    pub isomorphism_vertices: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            product_vertices: 5_000,
            exact_vertices: 64,
            perfect_vertices: 14,
            chromatic_entropy_vertices: 26,
            isomorphism_vertices: 16,
        }
    }
}

/// Settings of the alternating-minimization solvers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Stop once successive objective values differ by less than this.
    pub value_tol: f64,
    pub max_iter: usize,
    /// Random restarts for the conditional graph entropy.
    pub restarts: usize,
    pub seed: u64,
    /// Restart spread above which a result is flagged.
    pub spread_tol: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            value_tol: 1e-10,
            max_iter: 100_000,
            restarts: 16,
            seed: 0,
            spread_tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Config {
    pub limits: Limits,
    pub solver: SolverConfig,
}
