use alloc::vec::Vec;

use num_traits::Zero;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::{rational_f64, Convergence, EntropyResult, SetChannel, Witness};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::graphalg::maximal_independent_sets;
use crate::graphs::Graph;
use crate::model::{JointTable, Rational};

/// Conditional graph entropy `min I(W; X | Y)` over `W - X - Y`,
/// `X ∈ W ∈ Γ(G)`, where `joint[x][y]` is the pmf with `x` ranging over the
/// vertices of `g`.
///
/// Alternating minimization of `Σ p(x,y) p(w|x) log(p(w|x) / r(w|y))` over
/// the channel and the reverse channel `r`, restarted from seeded random
/// channels. The best restart is returned; the spread across restarts is
/// reported and flagged above the configured tolerance.
pub fn conditional_graph_entropy(g: &Graph, joint: &[Vec<Rational>], cfg: &Config) -> Result<EntropyResult> {
    if joint.len() != g.n() {
        return Err(Error::InvalidDistribution(alloc::format!(
            "{} joint rows for {} vertices",
            joint.len(),
            g.n()
        )));
    }
    let ny = joint.first().map_or(0, Vec::len);
    let px: Vec<Rational> = joint.iter().map(|r| r.iter().copied().sum()).collect();
    let pos: Vec<usize> = (0..g.n()).filter(|&x| !px[x].is_zero()).collect();
    let sub = g.induced(&pos);
    let k = pos.len();
    let n = g.n();

    if sub.edge_count() == 0 {
        let cond = (0..n).map(|x| alloc::vec![if px[x].is_zero() { 0.0 } else { 1.0 }]).collect();
        return Ok(EntropyResult::exact(0.0, Some(Witness::Channel(SetChannel { sets: alloc::vec![pos], cond }))));
    }
    if sub.edge_count() == k * (k - 1) / 2 {
        let mut t = JointTable::new(2);
        for (x, row) in joint.iter().enumerate() {
            for (y, &m) in row.iter().enumerate() {
                t.push(alloc::vec![x, y], m);
            }
        }
        let cond = (0..n)
            .map(|x| {
                let mut row = alloc::vec![0.0; k];
                if let Some(i) = pos.iter().position(|&u| u == x) {
                    row[i] = 1.0;
                }
                row
            })
            .collect();
        let sets = pos.iter().map(|&v| alloc::vec![v]).collect();
        return Ok(EntropyResult::exact(
            t.cond_entropy(&[0], &[1]),
            Some(Witness::Channel(SetChannel { sets, cond })),
        ));
    }

    let sets = maximal_independent_sets(&sub, cfg.limits.exact_vertices)?.sets;
    let p: Vec<Vec<f64>> = pos.iter().map(|&x| rational_f64(&joint[x])).collect();
    let py: Vec<f64> = (0..ny).map(|y| p.iter().map(|r| r[y]).sum()).collect();
    let prob = Problem {
        px: p.iter().map(|r| r.iter().sum()).collect(),
        p,
        py,
        members: (0..k)
            .map(|x| (0..sets.len()).filter(|&w| sets[w].contains(&x)).collect())
            .collect(),
        m: sets.len(),
    };

    let restarts = cfg.solver.restarts.max(1);
    let mut results: Vec<Run> = Vec::with_capacity(restarts);
    for r in 0..restarts {
        let init = if r == 0 {
            prob.uniform_channel()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.solver.seed.wrapping_add(r as u64));
            prob.random_channel(&mut rng)
        };
        results.push(prob.run(init, cfg));
    }
    let values: Vec<f64> = results.iter().map(|r| r.value).collect();
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let best = results
        .into_iter()
        .reduce(|a, b| if b.value < a.value { b } else { a })
        .unwrap();

    let mut cond = alloc::vec![alloc::vec![0.0; prob.m]; n];
    for (i, &x) in pos.iter().enumerate() {
        cond[x] = best.channel[i].clone();
    }
    let sets = sets
        .into_iter()
        .map(|s| s.into_iter().map(|x| pos[x]).collect())
        .collect();
    Ok(EntropyResult {
        value: best.value.max(0.0),
        witness: Some(Witness::Channel(SetChannel { sets, cond })),
        convergence: Some(Convergence {
            iterations: best.iterations,
            gap: best.gap,
            converged: best.converged,
            spread: hi - lo,
            spread_flag: hi - lo > cfg.solver.spread_tol,
            restarts: values,
        }),
    })
}

struct Problem {
    p: Vec<Vec<f64>>,
    px: Vec<f64>,
    py: Vec<f64>,
    members: Vec<Vec<usize>>,
    m: usize,
}

struct Run {
    value: f64,
    gap: f64,
    iterations: usize,
    converged: bool,
    channel: Vec<Vec<f64>>,
}

impl Problem {
    fn uniform_channel(&self) -> Vec<Vec<f64>> {
        self.members
            .iter()
            .map(|ms| {
                let mut row = alloc::vec![0.0; self.m];
                for &w in ms {
                    row[w] = 1.0 / ms.len() as f64;
                }
                row
            })
            .collect()
    }

    fn random_channel(&self, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
        self.members
            .iter()
            .map(|ms| {
                let mut row = alloc::vec![0.0; self.m];
                let mut total = 0.0;
                for &w in ms {
                    let u = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
                    row[w] = 0.05 + u;
                    total += row[w];
                }
                row.iter_mut().for_each(|v| *v /= total);
                row
            })
            .collect()
    }

    /// `r(w|y)` induced by the channel.
    fn reverse(&self, ch: &[Vec<f64>]) -> Vec<Vec<f64>> {
        let ny = self.py.len();
        let mut r = alloc::vec![alloc::vec![0.0; self.m]; ny];
        for y in 0..ny {
            if self.py[y] == 0.0 {
                continue;
            }
            for (x, row) in ch.iter().enumerate() {
                let pxy = self.p[x][y];
                if pxy == 0.0 {
                    continue;
                }
                for &w in &self.members[x] {
                    r[y][w] += pxy * row[w] / self.py[y];
                }
            }
        }
        r
    }

    /// `log2 ρ(w|x) = Σ_y p(y|x) log2 r(w|y)` on admissible `w`.
    fn log_rho(&self, x: usize, w: usize, r: &[Vec<f64>]) -> f64 {
        let mut acc = 0.0;
        for (y, ry) in r.iter().enumerate() {
            let pxy = self.p[x][y];
            if pxy > 0.0 {
                acc += pxy / self.px[x] * libm::log2(ry[w]);
            }
        }
        acc
    }

    /// Objective and certified gap at `ch` with its optimal reverse channel.
    fn evaluate(&self, ch: &[Vec<f64>], r: &[Vec<f64>]) -> (f64, f64) {
        let mut value = 0.0;
        let mut gap = 0.0;
        for (x, row) in ch.iter().enumerate() {
            let mut inner = 0.0;
            let mut least = f64::INFINITY;
            for &w in &self.members[x] {
                let d = if row[w] > 0.0 {
                    libm::log2(row[w]) - self.log_rho(x, w, r)
                } else {
                    f64::NEG_INFINITY
                };
                if row[w] > 0.0 {
                    inner += row[w] * d;
                }
                least = least.min(d);
            }
            value += self.px[x] * inner;
            gap += self.px[x] * (inner - least);
        }
        (value, gap.max(0.0))
    }

    fn run(&self, mut ch: Vec<Vec<f64>>, cfg: &Config) -> Run {
        let mut r = self.reverse(&ch);
        let (mut value, mut gap) = self.evaluate(&ch, &r);
        let mut iterations = 0;
        let mut converged = gap <= cfg.solver.value_tol;
        while !converged && iterations < cfg.solver.max_iter {
            for x in 0..ch.len() {
                let logs: Vec<(usize, f64)> = self.members[x]
                    .iter()
                    .map(|&w| (w, self.log_rho(x, w, &r)))
                    .collect();
                let top = logs.iter().map(|l| l.1).fold(f64::NEG_INFINITY, f64::max);
                let mut total = 0.0;
                for &(w, l) in &logs {
                    let e = libm::exp2(l - top);
                    ch[x][w] = e;
                    total += e;
                }
                for &(w, _) in &logs {
                    ch[x][w] /= total;
                }
            }
            r = self.reverse(&ch);
            let prev = value;
            (value, gap) = self.evaluate(&ch, &r);
            iterations += 1;
            if gap <= cfg.solver.value_tol || (prev - value).abs() < cfg.solver.value_tol * 1e-2 {
                converged = true;
            }
        }
        Run {
            value,
            gap,
            iterations,
            converged,
            channel: ch,
        }
    }
}
