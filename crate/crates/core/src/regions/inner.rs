use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::Region3;
use crate::config::Config;
use crate::error::{AuxCondition, Error, Result};
use crate::graphalg::maximal_independent_sets;
use crate::graphs::{aux_graph, confusability, AuxActivity, Graph, IndepSetChannel, Side};
use crate::model::{JointTable, ProblemInstance, RateTriple, Rational};

const CX: usize = 0;
const CY: usize = 1;
const CU1: usize = 2;
const CU2: usize = 3;
const CW: usize = 4;

/// One auxiliary choice `(U1, U2, W)`; `w` is a channel from the vertices
/// of the auxiliary graph `G_{U1U2}` onto independent sets of it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxComponent {
    pub u1: IndepSetChannel,
    pub u2: IndepSetChannel,
    pub w: IndepSetChannel,
}

impl AuxComponent {
    pub fn new(
        inst: &ProblemInstance,
        u1: IndepSetChannel,
        u2: IndepSetChannel,
        w_sets: Vec<Vec<usize>>,
        w_cond: Vec<Vec<Rational>>,
    ) -> Result<Self> {
        let g = aux_graph(inst, &u1, &u2)?;
        let w = IndepSetChannel::new(&g, w_sets, w_cond, AuxCondition::W)?;
        Ok(AuxComponent { u1, u2, w })
    }

    /// `W` sends auxiliary vertex `v` to set `assign[v]`.
    pub fn deterministic_w(
        inst: &ProblemInstance,
        u1: IndepSetChannel,
        u2: IndepSetChannel,
        w_sets: Vec<Vec<usize>>,
        assign: &[usize],
    ) -> Result<Self> {
        let g = aux_graph(inst, &u1, &u2)?;
        let w = IndepSetChannel::deterministic(&g, w_sets, assign, AuxCondition::W)?;
        Ok(AuxComponent { u1, u2, w })
    }

    /// `U1 = {X}`, `U2 = {Y}` and `W` the level set of `f` holding the pair.
    pub fn level_sets(inst: &ProblemInstance) -> Result<Self> {
        let u1 = IndepSetChannel::singletons(&confusability(inst, Side::A), AuxCondition::U1)?;
        let u2 = IndepSetChannel::singletons(&confusability(inst, Side::B), AuxCondition::U2)?;
        let ny = inst.ny();
        let cells = inst.nx() * ny;
        let mut sets: Vec<Vec<usize>> = Vec::new();
        let mut slot = alloc::vec![usize::MAX; inst.f.z_alpha.len()];
        let mut assign = alloc::vec![0; cells];
        for v in 0..cells {
            let z = inst.f(v / ny, v % ny);
            if slot[z] == usize::MAX {
                slot[z] = sets.len();
                sets.push(Vec::new());
            }
            sets[slot[z]].push(v);
            assign[v] = slot[z];
        }
        let names: Vec<alloc::string::String> = (0..inst.f.z_alpha.len())
            .filter(|&z| slot[z] != usize::MAX)
            .map(|z| format!("f={}", inst.f.z_alpha.symbol(z)))
            .collect();
        let mut c = Self::deterministic_w(inst, u1, u2, sets, &assign)?;
        for (slot, n) in c.w.names.iter_mut().zip(names) {
            *slot = n;
        }
        Ok(c)
    }

    /// Re-checks conditions (i)–(iii) and returns the auxiliary graph.
    pub fn validate(&self, inst: &ProblemInstance) -> Result<Graph> {
        for (ch, side, which) in [(&self.u1, Side::A, AuxCondition::U1), (&self.u2, Side::B, AuxCondition::U2)] {
            IndepSetChannel::new(&confusability(inst, side), ch.family.sets.clone(), ch.cond.clone(), which)?;
        }
        let g = aux_graph(inst, &self.u1, &self.u2)?;
        IndepSetChannel::new(&g, self.w.family.sets.clone(), self.w.cond.clone(), AuxCondition::W)?;
        Ok(g)
    }

    /// Joint table over `(X, Y, U1, U2, W)`.
    fn table(&self, inst: &ProblemInstance) -> JointTable {
        let act = AuxActivity::new(inst, &self.u1, &self.u2);
        let n2 = act.n_u2;
        let mut t = JointTable::new(5);
        for (v, cells) in act.cells.iter().enumerate() {
            for &(x, y, m) in cells {
                for (w, pw) in self.w.cond[v].iter().enumerate() {
                    if !pw.is_zero() {
                        t.push(alloc::vec![x, y, v / n2, v % n2, w], m * *pw);
                    }
                }
            }
        }
        t
    }
}

/// Time-shared auxiliary choices with weights `p(q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxChoice {
    pub parts: Vec<(Rational, AuxComponent)>,
}

impl AuxChoice {
    pub fn single(c: AuxComponent) -> Self {
        AuxChoice {
            parts: alloc::vec![(Rational::one(), c)],
        }
    }

    fn check_weights(&self) -> Result<()> {
        let fail = |detail: alloc::string::String| Error::AuxChoice {
            condition: AuxCondition::TimeShare,
            detail,
        };
        if self.parts.is_empty() {
            return Err(fail("no components".into()));
        }
        if self.parts.iter().any(|(q, _)| *q <= Rational::zero()) {
            return Err(fail("weights must be positive".into()));
        }
        let total: Rational = self.parts.iter().map(|p| p.0).sum();
        if total != Rational::one() {
            return Err(fail(format!("weights sum to {total}")));
        }
        Ok(())
    }
}

/// Zero-error triple `(I(X;U1|Q), I(Y;U2|Q), I(W;U1,U2|Q))`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroEval {
    pub rates: RateTriple,
    /// Exact values for coordinates whose log-ratios are all powers of two.
    pub exact: [Option<Rational>; 3],
}

/// ε-error constraints of one choice.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsEval {
    /// `I(X;U1|U2,Q)`.
    pub r_a: f64,
    /// `I(Y;U2|U1,Q)`.
    pub r_b: f64,
    /// `I(X,Y;U1,U2|Q)`, the bound on `R_A + R_B`.
    pub sum: f64,
    /// `max{I(W;U1|U2,Y,Q), I(W;U2|U1,X,Q)}`.
    pub r_c: f64,
    /// The two terms of `r_c`, receiver B then receiver A.
    pub relay_terms: [f64; 2],
}

impl EpsEval {
    /// The two extreme corners of the constraint set.
    pub fn region(&self) -> Region3 {
        let a = RateTriple::new(self.r_a, self.r_b.max(self.sum - self.r_a), self.r_c);
        let b = RateTriple::new(self.r_a.max(self.sum - self.r_b), self.r_b, self.r_c);
        Region3::new(if a == b { alloc::vec![a] } else { alloc::vec![a, b] })
    }
}

fn add_exact(acc: &mut Option<Rational>, q: Rational, v: Option<Rational>) {
    *acc = match (*acc, v) {
        (Some(a), Some(v)) => Some(a + q * v),
        _ => None,
    };
}

pub fn eval_zero_ri1(inst: &ProblemInstance, choice: &AuxChoice) -> Result<ZeroEval> {
    choice.check_weights()?;
    let mut r = [0.0; 3];
    let mut exact = [Some(Rational::zero()); 3];
    for (q, c) in &choice.parts {
        c.validate(inst)?;
        let t = c.table(inst);
        let qf = crate::model::to_f64(*q);
        let terms: [(&[usize], &[usize]); 3] = [(&[CX], &[CU1]), (&[CY], &[CU2]), (&[CW], &[CU1, CU2])];
        for (i, (a, b)) in terms.into_iter().enumerate() {
            r[i] += qf * t.mutual_info(a, b, &[]);
            add_exact(&mut exact[i], *q, t.mutual_info_exact(a, b, &[]));
        }
    }
    Ok(ZeroEval {
        rates: RateTriple::from_array(r),
        exact,
    })
}

pub fn eval_eps_ri1(inst: &ProblemInstance, choice: &AuxChoice) -> Result<EpsEval> {
    choice.check_weights()?;
    let mut v = [0.0; 5];
    for (q, c) in &choice.parts {
        c.validate(inst)?;
        let t = c.table(inst);
        let qf = crate::model::to_f64(*q);
        v[0] += qf * t.mutual_info(&[CX], &[CU1], &[CU2]);
        v[1] += qf * t.mutual_info(&[CY], &[CU2], &[CU1]);
        v[2] += qf * t.mutual_info(&[CX, CY], &[CU1, CU2], &[]);
        v[3] += qf * t.mutual_info(&[CW], &[CU1], &[CU2, CY]);
        v[4] += qf * t.mutual_info(&[CW], &[CU2], &[CU1, CX]);
    }
    Ok(EpsEval {
        r_a: v[0],
        r_b: v[1],
        sum: v[2],
        r_c: v[3].max(v[4]),
        relay_terms: [v[3], v[4]],
    })
}

/// `I(X;U1)` for side `A` or `I(Y;U2)` for side `B` after checking the
/// channel against the confusability graph.
pub fn side_rate(inst: &ProblemInstance, side: Side, ch: &IndepSetChannel) -> Result<f64> {
    let which = match side {
        Side::A => AuxCondition::U1,
        Side::B => AuxCondition::U2,
    };
    IndepSetChannel::new(&confusability(inst, side), ch.family.sets.clone(), ch.cond.clone(), which)?;
    let mut t = JointTable::new(2);
    for (x, y) in inst.pmf.support() {
        let v = if side == Side::A { x } else { y };
        for (u, p) in ch.cond[v].iter().enumerate() {
            t.push(alloc::vec![v, u], inst.p(x, y) * *p);
        }
    }
    Ok(t.mutual_info(&[0], &[1], &[]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Maximum number of evaluated choices.
    pub budget: usize,
    /// Randomized conditionals use probabilities in steps of `1/grid`;
    /// `0` keeps only deterministic assignments.
    pub grid: usize,
    /// Evaluate the ε-error constraints instead of the zero-error triple.
    pub eps: bool,
    /// Enumerate every deterministic `W` when there are at most this many.
    pub w_enum: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: 20_000,
            grid: 4,
            eps: false,
            w_enum: 64,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    /// Non-dominated corners found.
    pub region: Region3,
    pub evaluated: usize,
    pub exhausted: bool,
}

fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return alloc::vec![alloc::vec![total]];
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Visits the mixed-radix product of `radix` until `visit` returns false.
fn for_each_product(radix: &[usize], mut visit: impl FnMut(&[usize]) -> bool) {
    if radix.contains(&0) {
        return;
    }
    let mut digits = alloc::vec![0; radix.len()];
    loop {
        if !visit(&digits) {
            return;
        }
        let mut i = radix.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < radix[i] {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// Candidate channels for one side: singletons, deterministic assignments
/// to maximal independent sets, then grid-randomized ones, up to `cap`.
fn side_channels(
    g: &Graph,
    mass: &[Rational],
    which: AuxCondition,
    grid: usize,
    cap: usize,
    guard: usize,
) -> Result<Vec<IndepSetChannel>> {
    let mut out = alloc::vec![IndepSetChannel::singletons(g, which)?];
    let sets = maximal_independent_sets(g, guard)?.sets;
    let containing: Vec<Vec<usize>> = (0..g.n())
        .map(|v| (0..sets.len()).filter(|&s| sets[s].contains(&v)).collect())
        .collect();
    let free: Vec<usize> = (0..g.n()).filter(|&v| !mass[v].is_zero() && containing[v].len() > 1).collect();
    let base: Vec<Vec<Rational>> = (0..g.n())
        .map(|v| {
            let mut row = alloc::vec![Rational::zero(); sets.len()];
            row[containing[v][0]] = Rational::one();
            row
        })
        .collect();

    let radix: Vec<usize> = free.iter().map(|&v| containing[v].len()).collect();
    let mut err = None;
    for_each_product(&radix, |d| {
        if out.len() >= cap {
            return false;
        }
        let mut cond = base.clone();
        for (i, &v) in free.iter().enumerate() {
            cond[v].iter_mut().for_each(|p| *p = Rational::zero());
            cond[v][containing[v][d[i]]] = Rational::one();
        }
        match IndepSetChannel::new(g, sets.clone(), cond, which) {
            Ok(c) => out.push(c),
            Err(e) => err = Some(e),
        }
        err.is_none()
    });
    if let Some(e) = err {
        return Err(e);
    }
    if grid < 2 {
        return Ok(out);
    }
    let options: Vec<Vec<Vec<usize>>> = free.iter().map(|&v| compositions(grid, containing[v].len())).collect();
    let radix: Vec<usize> = options.iter().map(Vec::len).collect();
    let step = Rational::new(1, grid as i128);
    for_each_product(&radix, |d| {
        if out.len() >= cap {
            return false;
        }
        if (0..free.len()).all(|i| options[i][d[i]].contains(&grid)) {
            return true;
        }
        let mut cond = base.clone();
        for (i, &v) in free.iter().enumerate() {
            cond[v].iter_mut().for_each(|p| *p = Rational::zero());
            for (j, &k) in options[i][d[i]].iter().enumerate() {
                cond[v][containing[v][j]] = step * Rational::from_integer(k as i128);
            }
        }
        match IndepSetChannel::new(g, sets.clone(), cond, which) {
            Ok(c) => out.push(c),
            Err(e) => err = Some(e),
        }
        err.is_none()
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Deterministic `W` candidates over the maximal independent sets of the
/// positive part of the auxiliary graph: greedy heaviest-set peeling, plus
/// every assignment when there are at most `w_enum`.
fn w_candidates(g: &Graph, act: &AuxActivity, w_enum: usize, guard: usize) -> Result<Vec<(Vec<Vec<usize>>, Vec<usize>)>> {
    let mass: Vec<Rational> = (0..g.n()).map(|v| act.vertex_mass(v)).collect();
    let pos: Vec<usize> = (0..g.n()).filter(|&v| !mass[v].is_zero()).collect();
    let zero: Vec<usize> = (0..g.n()).filter(|&v| mass[v].is_zero()).collect();
    let mut sets: Vec<Vec<usize>> = maximal_independent_sets(&g.induced(&pos), guard)?
        .sets
        .into_iter()
        .map(|s| s.into_iter().map(|i| pos[i]).collect())
        .collect();
    if sets.is_empty() {
        sets.push(Vec::new());
    }
    sets[0].extend(zero.iter().copied());
    sets[0].sort_unstable();
    let containing: Vec<Vec<usize>> = (0..g.n())
        .map(|v| (0..sets.len()).filter(|&s| sets[s].contains(&v)).collect())
        .collect();

    let mut out = Vec::new();
    let mut assign = alloc::vec![0; g.n()];
    let mut left: Vec<usize> = pos.clone();
    while !left.is_empty() {
        let best = (0..sets.len())
            .max_by(|&a, &b| {
                let m = |s: usize| -> Rational { left.iter().filter(|v| sets[s].contains(v)).map(|&v| mass[v]).sum() };
                m(a).cmp(&m(b)).then(b.cmp(&a))
            })
            .unwrap();
        for &v in left.iter().filter(|v| sets[best].contains(v)) {
            assign[v] = best;
        }
        left.retain(|v| !sets[best].contains(v));
    }
    out.push((sets.clone(), assign));

    let radix: Vec<usize> = pos.iter().map(|&v| containing[v].len()).collect();
    let count = radix.iter().try_fold(1usize, |acc, &r| acc.checked_mul(r));
    if count.is_some_and(|c| c <= w_enum) {
        for_each_product(&radix, |d| {
            let mut a = alloc::vec![0; g.n()];
            for (i, &v) in pos.iter().enumerate() {
                a[v] = containing[v][d[i]];
            }
            if a != out[0].1 {
                out.push((sets.clone(), a));
            }
            true
        });
    }
    Ok(out)
}

/// Index pairs with `max(i, j) == s`.
fn shell_pairs(s: usize, n1: usize, n2: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    if s < n1 {
        out.extend((0..s.min(n2)).map(|j| (s, j)));
    }
    if s < n2 {
        out.extend((0..n1.min(s + 1)).map(|i| (i, s)));
    }
    out
}

/// Heuristic sweep of the single-letter inner bound. Never claims
/// optimality; the region is flagged when the budget runs out.
pub fn search_ri1(inst: &ProblemInstance, sc: &SearchConfig, cfg: &Config) -> Result<SearchResult> {
    let guard = cfg.limits.exact_vertices;
    let c1 = side_channels(
        &confusability(inst, Side::A),
        &inst.pmf.marginal_x(),
        AuxCondition::U1,
        sc.grid,
        sc.budget,
        guard,
    )?;
    let c2 = side_channels(
        &confusability(inst, Side::B),
        &inst.pmf.marginal_y(),
        AuxCondition::U2,
        sc.grid,
        sc.budget,
        guard,
    )?;
    let mut region = Region3::default();
    let mut evaluated = 0;
    let mut exhausted = false;
    'outer: for s in 0..c1.len().max(c2.len()) {
        let pairs = shell_pairs(s, c1.len(), c2.len());
        for (i, j) in pairs {
            let (u1, u2) = (&c1[i], &c2[j]);
            let g = aux_graph(inst, u1, u2)?;
            let act = AuxActivity::new(inst, u1, u2);
            for (sets, assign) in w_candidates(&g, &act, sc.w_enum, guard)? {
                if evaluated >= sc.budget {
                    exhausted = true;
                    break 'outer;
                }
                evaluated += 1;
                let choice = AuxChoice::single(AuxComponent::deterministic_w(inst, u1.clone(), u2.clone(), sets, &assign)?);
                if sc.eps {
                    let e = eval_eps_ri1(inst, &choice)?;
                    region.generators.extend(e.region().generators);
                } else {
                    region.generators.push(eval_zero_ri1(inst, &choice)?.rates);
                }
            }
        }
        if region.generators.len() > 4 * sc.budget.max(64) {
            region = region.pruned(1e-12);
        }
    }
    let mut region = region.pruned(1e-12);
    if exhausted {
        region
            .warnings
            .push(format!("search budget exhausted after {evaluated} evaluations; region is partial"));
    }
    Ok(SearchResult {
        region,
        evaluated,
        exhausted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{binary_entropy, fixture};

    /// `a = {1,2}`, `b = {2,3}` with `p(a|2) = p`.
    pub(crate) fn halves(inst: &ProblemInstance, side: Side, p: Rational) -> IndepSetChannel {
        let which = if side == Side::A { AuxCondition::U1 } else { AuxCondition::U2 };
        let (o, z) = (Rational::one(), Rational::zero());
        let cond = alloc::vec![alloc::vec![o, z], alloc::vec![p, o - p], alloc::vec![z, o]];
        IndepSetChannel::new(&confusability(inst, side), alloc::vec![alloc::vec![0, 1], alloc::vec![1, 2]], cond, which)
            .unwrap()
    }

    #[test]
    fn threshold_halves_choice() {
        let inst = fixture("THRESHOLD").unwrap();
        let h = Rational::new(1, 2);
        let (u1, u2) = (halves(&inst, Side::A, h), halves(&inst, Side::B, h));
        // square (a,c)-(a,d)-(b,d)-(b,c): W pairs opposite corners
        let sets = alloc::vec![alloc::vec![0, 3], alloc::vec![1, 2]];
        let c = AuxComponent::deterministic_w(&inst, u1, u2, sets, &[0, 1, 1, 0]).unwrap();
        let z = eval_zero_ri1(&inst, &AuxChoice::single(c)).unwrap();
        assert_eq!(z.exact[0], Some(Rational::new(2, 3)));
        assert_eq!(z.exact[1], Some(Rational::new(2, 3)));
        assert!((z.rates.r_c - binary_entropy(1.0 / 3.0)).abs() < 1e-12);
    }

    #[test]
    fn pentagon_level_sets() {
        let inst = fixture("PENTAGON").unwrap();
        let z = eval_zero_ri1(&inst, &AuxChoice::single(AuxComponent::level_sets(&inst).unwrap())).unwrap();
        let l5 = libm::log2(5.0);
        assert!((z.rates.r_a - l5).abs() < 1e-12 && (z.rates.r_b - l5).abs() < 1e-12);
        assert_eq!(z.exact[2], Some(Rational::one()));
    }

    #[test]
    fn and_eps_corners() {
        let inst = fixture("DSBS_AND(1/4)").unwrap();
        let e = eval_eps_ri1(&inst, &AuxChoice::single(AuxComponent::level_sets(&inst).unwrap())).unwrap();
        let h = binary_entropy(0.25);
        assert!((e.r_a - h).abs() < 1e-12 && (e.sum - 1.0 - h).abs() < 1e-12 && (e.r_c - h / 2.0).abs() < 1e-12);
        let r = e.region();
        assert!(r.member(&RateTriple::new(1.0, h, h / 2.0), 1e-9));
        assert!(!r.member(&RateTriple::new(h, h, h), 1e-9));
    }

    #[test]
    fn bad_w_is_reported_as_condition_iii() {
        let inst = fixture("PENTAGON").unwrap();
        let c = AuxComponent::level_sets(&inst).unwrap();
        let all: Vec<usize> = (0..25).collect();
        let e = AuxComponent::deterministic_w(&inst, c.u1, c.u2, alloc::vec![all], &[0; 25]).unwrap_err();
        assert!(matches!(e, Error::AuxChoice { condition: AuxCondition::W, .. }));
    }

    #[test]
    fn time_share_weights_checked() {
        let inst = fixture("PENTAGON").unwrap();
        let c = AuxComponent::level_sets(&inst).unwrap();
        let bad = AuxChoice {
            parts: alloc::vec![(Rational::new(1, 2), c)],
        };
        assert!(matches!(
            eval_zero_ri1(&inst, &bad),
            Err(Error::AuxChoice { condition: AuxCondition::TimeShare, .. })
        ));
    }

    #[test]
    fn threshold_search_recovers_halves() {
        let inst = fixture("THRESHOLD").unwrap();
        let sc = SearchConfig { grid: 2, ..SearchConfig::default() };
        let r = search_ri1(&inst, &sc, &Config::default()).unwrap();
        assert!(!r.exhausted);
        let best = r
            .region
            .generators
            .iter()
            .filter(|g| g.r_a <= 2.0 / 3.0 + 1e-9 && g.r_b <= 2.0 / 3.0 + 1e-9)
            .map(|g| g.r_c)
            .fold(f64::INFINITY, f64::min);
        assert!((best - binary_entropy(1.0 / 3.0)).abs() < 1e-9, "{best}");
    }

    #[test]
    fn pentagon_search_contains_named_point() {
        let inst = fixture("PENTAGON").unwrap();
        let sc = SearchConfig { grid: 0, budget: 2_000, ..SearchConfig::default() };
        let r = search_ri1(&inst, &sc, &Config::default()).unwrap();
        let l5 = libm::log2(5.0);
        assert!(r.region.member(&RateTriple::new(l5, l5, 1.0), 1e-9));
    }
}
