//! Mutual correlation, good pairs, iterative pairs and deduced factorizations.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::automaton::{Dpda, RunError, PLACEHOLDER};
use crate::history::{is_pseudo_convex, record_history, Block, HistoryError, StackHistory};
use crate::language::LanguageSpec;
use crate::normal_forms::{epsilon_enhance, induce, InduceError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PairError {
    #[error("iterative pair needs |xy| ≥ 1")]
    EmptyPair,
    #[error("factorization does not match the history input")]
    CutMisaligned,
    #[error("factorization needs five comma-separated parts")]
    Malformed,
    #[error("premise violated: {0}")]
    PremiseViolated(String),
    #[error(transparent)]
    Run(#[from] RunError),
    #[error(transparent)]
    Induce(#[from] InduceError),
    #[error(transparent)]
    History(#[from] HistoryError),
}

/// `w = u·x·v·y·z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Factorization5 {
    pub u: String,
    pub x: String,
    pub v: String,
    pub y: String,
    pub z: String,
}

impl Factorization5 {
    pub fn new(u: &str, x: &str, v: &str, y: &str, z: &str) -> Self {
        Factorization5 { u: u.into(), x: x.into(), v: v.into(), y: y.into(), z: z.into() }
    }

    /// Parses `u,x,v,y,z`; `ε` denotes the empty part.
    pub fn parse(s: &str) -> Result<Self, PairError> {
        let parts: Vec<&str> = s.split(',').map(|p| p.trim()).collect();
        if parts.len() != 5 {
            return Err(PairError::Malformed);
        }
        let p = |i: usize| if parts[i] == "ε" { "" } else { parts[i] };
        Ok(Factorization5::new(p(0), p(1), p(2), p(3), p(4)))
    }

    pub fn word(&self) -> String {
        self.pumped(1, 1)
    }

    /// `u·xⁱ·v·yʲ·z`.
    pub fn pumped(&self, i: usize, j: usize) -> String {
        let mut s = String::with_capacity(self.u.len() + i * self.x.len() + self.v.len() + j * self.y.len() + self.z.len());
        s.push_str(&self.u);
        for _ in 0..i {
            s.push_str(&self.x);
        }
        s.push_str(&self.v);
        for _ in 0..j {
            s.push_str(&self.y);
        }
        s.push_str(&self.z);
        s
    }

    pub fn pair_is_empty(&self) -> bool {
        self.x.is_empty() && self.y.is_empty()
    }

    /// Cut positions |u|, |ux|, |uxv|, |uxvy| in symbols.
    pub fn cuts(&self) -> [usize; 4] {
        let l = |s: &String| s.chars().count();
        let a = l(&self.u);
        let b = a + l(&self.x);
        let c = b + l(&self.v);
        [a, b, c, c + l(&self.y)]
    }
}

impl fmt::Display for Factorization5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = |s: &String| if s.is_empty() { "ε".to_string() } else { s.clone() };
        write!(f, "{},{},{},{},{}", e(&self.u), e(&self.x), e(&self.v), e(&self.y), e(&self.z))
    }
}

/// Identical stacks at `t1 < t2` and a pseudo-convex block between them.
pub fn mutually_correlated(h: &StackHistory, t1: usize, t2: usize) -> bool {
    t1 < t2 && t2 < h.len() && h.stacks[t1] == h.stacks[t2] && is_pseudo_convex(&h.heights(), Block::new(t1, t2))
}

fn extends(lower: &[char], upper: &[char]) -> bool {
    upper.len() >= lower.len() && upper[..lower.len()] == *lower
}

/// Stacks `γ, αγ, αγ, γ` at `t1..t4` with all three blocks pseudo-convex.
pub fn blocks_mutually_correlated(h: &StackHistory, b1: Block, b2: Block) -> bool {
    let [t1, t2, t3, t4] = [b1.start, b1.end, b2.start, b2.end];
    if !(t1 < t2 && t2 < t3 && t3 < t4 && t4 < h.len()) {
        return false;
    }
    let hs = h.heights();
    h.stacks[t1] == h.stacks[t4]
        && h.stacks[t2] == h.stacks[t3]
        && extends(&h.stacks[t1], &h.stacks[t2])
        && is_pseudo_convex(&hs, b1)
        && is_pseudo_convex(&hs, Block::new(t2, t3))
        && is_pseudo_convex(&hs, b2)
}

pub fn is_good_pair(h: &StackHistory, b1: Block, b2: Block) -> bool {
    blocks_mutually_correlated(h, b1, b2) && h.states[b1.start] == h.states[b1.end] && h.states[b2.start] == h.states[b2.end]
}

/// All good pairs with `lo ≤ t1` and `t4 ≤ hi` whose blocks span at most `max_block` boundaries steps.
pub fn good_pairs(h: &StackHistory, max_block: usize, lo: usize, hi: usize) -> Vec<(Block, Block)> {
    let hs = h.heights();
    let hi = hi.min(h.last());
    let mut out = Vec::new();
    for t1 in lo..=hi {
        for t2 in t1 + 1..=(t1 + max_block).min(hi) {
            if h.states[t1] != h.states[t2]
                || !extends(&h.stacks[t1], &h.stacks[t2])
                || !is_pseudo_convex(&hs, Block::new(t1, t2))
            {
                continue;
            }
            for t3 in t2 + 1..=hi {
                if h.stacks[t3] != h.stacks[t2] || !is_pseudo_convex(&hs, Block::new(t2, t3)) {
                    continue;
                }
                for t4 in t3 + 1..=(t3 + max_block).min(hi) {
                    if h.stacks[t4] == h.stacks[t1]
                        && h.states[t3] == h.states[t4]
                        && is_pseudo_convex(&hs, Block::new(t3, t4))
                    {
                        out.push((Block::new(t1, t2), Block::new(t3, t4)));
                    }
                }
            }
        }
    }
    out
}

/// Number of plain symbols before boundary `t`.
pub fn plain_cut(h: &StackHistory, t: usize) -> usize {
    h.input.symbols[..t.saturating_sub(1).min(h.input.len())].iter().filter(|&&c| c != PLACEHOLDER).count()
}

/// Boundary of plain cut `k`: after the k-th plain symbol and any placeholders following it.
pub fn boundary_of_cut(h: &StackHistory, k: usize) -> Option<usize> {
    let mut seen = 0;
    for (i, &c) in h.input.symbols.iter().enumerate() {
        if c != PLACEHOLDER {
            if seen == k {
                return Some(i + 1);
            }
            seen += 1;
        }
    }
    (seen == k).then_some(h.input.len() + 1)
}

/// The plain factorization cut at boundaries `t1..t4`.
pub fn induced_factorization(h: &StackHistory, b1: Block, b2: Block) -> Factorization5 {
    let plain: Vec<char> = h.input.strip().chars().collect();
    let c = [b1.start, b1.end, b2.start, b2.end].map(|t| plain_cut(h, t));
    let s = |a: usize, b: usize| plain[a..b].iter().collect::<String>();
    Factorization5 {
        u: s(0, c[0]),
        x: s(c[0], c[1]),
        v: s(c[1], c[2]),
        y: s(c[2], c[3]),
        z: s(c[3], plain.len()),
    }
}

/// Enhanced boundaries of the four cut points of `f`.
pub fn cut_boundaries(h: &StackHistory, f: &Factorization5) -> Result<[usize; 4], PairError> {
    if f.word() != h.input.strip() {
        return Err(PairError::CutMisaligned);
    }
    let mut out = [0; 4];
    for (o, k) in out.iter_mut().zip(f.cuts()) {
        *o = boundary_of_cut(h, k).ok_or(PairError::CutMisaligned)?;
    }
    Ok(out)
}

pub fn is_stack_operational(h: &StackHistory, f: &Factorization5) -> Result<bool, PairError> {
    let [t1, t2, t3, t4] = cut_boundaries(h, f)?;
    Ok(is_good_pair(h, Block::new(t1, t2), Block::new(t3, t4)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PumpResult {
    pub passes: bool,
    pub first_failure: Option<usize>,
}

/// Checks `u·xⁱ·v·yⁱ·z ∈ L` for `i = 0..=i_max`.
pub fn pump_test(spec: &LanguageSpec, f: &Factorization5, i_max: usize) -> Result<PumpResult, PairError> {
    pump_with(|w| spec.member(w, None), f, i_max, true)
}

/// Pump test against an arbitrary membership oracle; `expect` is the verdict every pumped string must get.
pub fn pump_with(
    mut member: impl FnMut(&str) -> Result<bool, RunError>,
    f: &Factorization5,
    i_max: usize,
    expect: bool,
) -> Result<PumpResult, PairError> {
    if f.pair_is_empty() {
        return Err(PairError::EmptyPair);
    }
    for i in 0..=i_max {
        if member(&f.pumped(i, i))? != expect {
            return Ok(PumpResult { passes: false, first_failure: Some(i) });
        }
    }
    Ok(PumpResult { passes: true, first_failure: None })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Tri {
    Yes,
    No,
    Inconclusive,
}

/// Bounded evidence for nondegeneracy over the grid `u·xⁱ·v·yʲ·z`, `i ≤ i_max`, `j ≤ j_max`.
///
/// A row (column) is open when its last two cells both succeed, a hint that
/// the successes keep growing. `Yes` when every row or every column is
/// closed; `No` when some row and some column succeed throughout.
pub fn nondegenerate_bounded(spec: &LanguageSpec, f: &Factorization5, i_max: usize, j_max: usize) -> Result<Tri, PairError> {
    if f.pair_is_empty() {
        return Err(PairError::EmptyPair);
    }
    let mut grid = vec![vec![false; j_max + 1]; i_max + 1];
    for (i, row) in grid.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = spec.member(&f.pumped(i, j), None)?;
        }
    }
    Ok(grid_verdict(&grid))
}

pub fn grid_verdict(grid: &[Vec<bool>]) -> Tri {
    let rows = grid.len();
    let cols = grid.first().map_or(0, Vec::len);
    if rows < 2 || cols < 2 {
        return Tri::Inconclusive;
    }
    let row_open = |i: usize| grid[i][cols - 1] && grid[i][cols - 2];
    let col_open = |j: usize| grid[rows - 1][j] && grid[rows - 2][j];
    let row_full = (0..rows).any(|i| grid[i].iter().all(|&b| b));
    let col_full = (0..cols).any(|j| (0..rows).all(|i| grid[i][j]));
    if row_full && col_full {
        Tri::No
    } else if (0..rows).all(|i| !row_open(i)) || (0..cols).all(|j| !col_open(j)) {
        Tri::Yes
    } else {
        Tri::Inconclusive
    }
}

fn strip_power<'a>(mut s: &'a str, rep: &str, max: usize) -> Vec<&'a str> {
    // Every suffix left after removing 0, 1, 2, … leading copies of `rep`.
    let mut out = vec![s];
    if rep.is_empty() {
        return out;
    }
    for _ in 0..max {
        match s.strip_prefix(rep) {
            Some(r) => {
                s = r;
                out.push(s);
            }
            None => break,
        }
    }
    out
}

fn in_form(s: &str, prefix: &str, rep: &str, suffix: &str) -> bool {
    // s ∈ prefix·rep*·suffix
    let Some(rest) = s.strip_prefix(prefix) else { return false };
    strip_power(rest, rep, rest.len()).into_iter().any(|r| r == suffix)
}

/// Whether `candidate` is deduced from `base` with `n₀, p, q ≤ bound`.
pub fn is_deduced(base: &Factorization5, candidate: &Factorization5, bound: usize) -> bool {
    let cw = candidate.word();
    if !(1..=bound).any(|n0| base.pumped(n0, n0) == cw) {
        return false;
    }
    let splits = |s: &str| -> Vec<(String, String)> {
        let c: Vec<char> = s.chars().collect();
        (0..=c.len()).map(|k| (c[..k].iter().collect(), c[k..].iter().collect())).collect()
    };
    let rep = |s: &str, n: usize| s.repeat(n);
    for (x1, x2) in splits(&base.x) {
        let x21 = format!("{x2}{x1}");
        if !(1..=bound).any(|p| candidate.x == rep(&x21, p)) {
            continue;
        }
        if !in_form(&candidate.u, &base.u, &base.x, &x1) {
            continue;
        }
        for (y1, y2) in splits(&base.y) {
            let y21 = format!("{y2}{y1}");
            if !(1..=bound).any(|q| candidate.y == rep(&y21, q)) {
                continue;
            }
            if !in_form(&candidate.z, &y2, &base.y, &base.z) {
                continue;
            }
            // v′ ∈ x₂·x*·v·y*·y₁
            let Some(mid) = candidate.v.strip_prefix(x2.as_str()).and_then(|r| r.strip_suffix(y1.as_str())) else {
                continue;
            };
            if strip_power(mid, &base.x, mid.len()).into_iter().any(|r| in_form(r, &base.v, &base.y, "")) {
                return true;
            }
        }
    }
    false
}

/// Given boundaries `t₁ < … < t_m ≤ r₁ < … < r_m` matching the descending
/// premise, returns the first `i < j` with equal states at `r_i`, `r_j`.
pub fn descending_repeat(h: &StackHistory, ts: &[usize], rs: &[usize]) -> Result<Option<(usize, usize)>, PairError> {
    let m = ts.len();
    let bad = |why: &str| Err(PairError::PremiseViolated(why.into()));
    if m == 0 || rs.len() != m {
        return bad("need two sequences of equal positive length");
    }
    if ts.windows(2).any(|w| w[0] >= w[1]) || rs.windows(2).any(|w| w[0] >= w[1]) || ts[m - 1] > rs[0] || rs[m - 1] >= h.len() {
        return bad("boundaries out of order");
    }
    if ts.iter().any(|&t| h.states[t] != h.states[ts[0]]) {
        return bad("states at t differ");
    }
    let hs = h.heights();
    for i in 0..m {
        if h.stacks[rs[i]] != h.stacks[ts[m - 1 - i]] {
            return bad("stacks at r do not mirror stacks at t");
        }
        if i + 1 < m {
            if !extends(&h.stacks[ts[i]], &h.stacks[ts[i + 1]]) {
                return bad("stacks at t do not grow");
            }
            if !is_pseudo_convex(&hs, Block::new(ts[i], ts[i + 1])) || !is_pseudo_convex(&hs, Block::new(rs[i], rs[i + 1])) {
                return bad("block not pseudo-convex");
            }
        }
    }
    for j in 1..m {
        for i in 0..j {
            if h.states[rs[i]] == h.states[rs[j]] {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepFailure {
    pub input: String,
    pub factorization: String,
    pub first_failure: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepStats {
    pub inputs: u64,
    pub good_pairs: u64,
    pub single_blocks: u64,
    pub failures: Vec<SweepFailure>,
}

/// Runs `m` on `x`, enumerates good pairs and correlated single blocks of
/// the enhanced run, and pump-tests every induced plain factorization.
/// Rejected inputs are checked against the complement.
pub fn certify_run(
    m: &Dpda,
    enhanced: &Dpda,
    x: &str,
    max_block: usize,
    i_max: usize,
    stats: &mut SweepStats,
) -> Result<StackHistory, PairError> {
    let xh = induce(m, x)?;
    let h = record_history(enhanced, &xh)?;
    let accepted = enhanced.is_accepting(*h.states.last().unwrap());
    let hi = xh.len() + 1;
    let member = |w: &str| m.accepts(w, None);
    stats.inputs += 1;
    for (b1, b2) in good_pairs(&h, max_block, 1, hi) {
        stats.good_pairs += 1;
        let f = induced_factorization(&h, b1, b2);
        let r = pump_with(member, &f, i_max, accepted)?;
        if let Some(i) = r.first_failure {
            stats.failures.push(SweepFailure { input: x.into(), factorization: f.to_string(), first_failure: i });
        }
    }
    let hs = h.heights();
    for t1 in 1..=hi.min(h.last()) {
        for t2 in t1 + 1..=(t1 + max_block).min(hi).min(h.last()) {
            if h.states[t1] == h.states[t2] && h.stacks[t1] == h.stacks[t2] && is_pseudo_convex(&hs, Block::new(t1, t2)) {
                stats.single_blocks += 1;
                let c1 = plain_cut(&h, t1);
                let c2 = plain_cut(&h, t2);
                if c1 == c2 {
                    continue;
                }
                let plain: Vec<char> = xh.strip().chars().collect();
                let s = |a: usize, b: usize| plain[a..b].iter().collect::<String>();
                let f = Factorization5::new(&s(0, c1), &s(c1, c2), "", "", &s(c2, plain.len()));
                let r = pump_with(member, &f, i_max, accepted)?;
                if let Some(i) = r.first_failure {
                    stats.failures.push(SweepFailure { input: x.into(), factorization: f.to_string(), first_failure: i });
                }
            }
        }
    }
    Ok(h)
}

/// Convenience wrapper that enhances `m` first.
pub fn certify_input(m: &Dpda, x: &str, max_block: usize, i_max: usize) -> Result<SweepStats, PairError> {
    let n = epsilon_enhance(m)?;
    let mut stats = SweepStats::default();
    certify_run(m, &n, x, max_block, i_max, &mut stats)?;
    Ok(stats)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IterativePairReport {
    pub factorization: Factorization5,
    pub pumped_up_to: usize,
    pub pump: PumpResult,
    pub good_pair: Option<[usize; 4]>,
    pub nondegenerate_bounded: Tri,
    pub stack_operational: Option<bool>,
}

/// Pump test, bounded nondegeneracy and, when a machine is given, stack-operationality.
pub fn iterative_pair_report(
    spec: &LanguageSpec,
    machine: Option<&Dpda>,
    f: &Factorization5,
    i_max: usize,
    j_max: usize,
) -> Result<IterativePairReport, PairError> {
    let pump = pump_test(spec, f, i_max)?;
    let nd = nondegenerate_bounded(spec, f, i_max, j_max)?;
    let mut good_pair = None;
    let mut stack_operational = None;
    if let Some(m) = machine {
        let n = epsilon_enhance(m)?;
        let xh = induce(m, &f.word())?;
        let h = record_history(&n, &xh)?;
        let cuts = cut_boundaries(&h, f)?;
        let ok = is_good_pair(&h, Block::new(cuts[0], cuts[1]), Block::new(cuts[2], cuts[3]));
        stack_operational = Some(ok);
        if ok {
            good_pair = Some(cuts);
        }
    }
    Ok(IterativePairReport { factorization: f.clone(), pumped_up_to: i_max, pump, good_pair, nondegenerate_bounded: nd, stack_operational })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::anbn;
    use crate::normal_forms::EnhancedString;

    fn spec() -> LanguageSpec {
        LanguageSpec::single("anbn", anbn())
    }

    fn history(w: &str) -> StackHistory {
        let m = anbn();
        record_history(&epsilon_enhance(&m).unwrap(), &induce(&m, w).unwrap()).unwrap()
    }

    fn synthetic(stacks: &[&str], states: &[usize]) -> StackHistory {
        StackHistory {
            input: EnhancedString::new(vec!['a'; stacks.len().saturating_sub(2)]),
            states: states.to_vec(),
            stacks: stacks.iter().map(|s| s.chars().rev().collect()).collect(),
        }
    }

    #[test]
    fn pump_examples() {
        let p = pump_test(&spec(), &Factorization5::parse("ε,a,ab,b,ε").unwrap(), 5).unwrap();
        assert!(p.passes);
        let p = pump_test(&spec(), &Factorization5::parse("ε,a,ε,bb,ε").unwrap(), 5).unwrap();
        assert_eq!(p.first_failure, Some(1));
        let f = Factorization5::parse("ab,ε,ε,ε,ε").unwrap();
        assert_eq!(pump_test(&spec(), &f, 0).unwrap_err(), PairError::EmptyPair);
    }

    #[test]
    fn nondegeneracy_examples() {
        let f = Factorization5::parse("ε,a,a,b,b").unwrap();
        assert_eq!(nondegenerate_bounded(&spec(), &f, 4, 4).unwrap(), Tri::Yes);
        assert_eq!(nondegenerate_bounded(&spec(), &f, 0, 0).unwrap(), Tri::Inconclusive);
        let all = vec![vec![true; 5]; 5];
        assert_eq!(grid_verdict(&all), Tri::No);
    }

    #[test]
    fn correlation_examples() {
        let h = synthetic(&["Z", "Z", "aZ", "baZ", "aZ", "cZ", "aZ"], &[0, 0, 0, 0, 0, 0, 0]);
        assert!(mutually_correlated(&h, 0, 1));
        assert!(mutually_correlated(&h, 2, 4));
        assert!(!mutually_correlated(&h, 1, 5));
        let v = synthetic(&["aZ", "Z", "aZ"], &[0, 0, 0]);
        assert!(!mutually_correlated(&v, 0, 2));
    }

    #[test]
    fn block_correlation_examples() {
        // push a, wander on top, pop a
        let h = synthetic(&["Z", "aZ", "baZ", "aZ", "Z"], &[0, 1, 2, 1, 0]);
        assert!(blocks_mutually_correlated(&h, Block::new(0, 1), Block::new(3, 4)));
        assert!(!is_good_pair(&h, Block::new(0, 1), Block::new(3, 4)));
        let g = synthetic(&["Z", "aZ", "baZ", "aZ", "Z"], &[0, 0, 2, 1, 1]);
        assert!(is_good_pair(&g, Block::new(0, 1), Block::new(3, 4)));
        let mism = synthetic(&["Z", "aZ", "baZ", "bZ", "Z"], &[0, 0, 2, 1, 1]);
        assert!(!blocks_mutually_correlated(&mism, Block::new(0, 1), Block::new(3, 4)));
        let dip = synthetic(&["Z", "aZ", "Z", "aZ", "Z"], &[0, 0, 2, 1, 1]);
        assert!(!blocks_mutually_correlated(&dip, Block::new(0, 1), Block::new(3, 4)));
        assert!(!blocks_mutually_correlated(&g, Block::new(0, 2), Block::new(2, 4)));
    }

    #[test]
    fn stack_operational_examples() {
        let h = history("aabb");
        assert!(is_stack_operational(&h, &Factorization5::parse("ε,a,ab,b,ε").unwrap()).unwrap());
        assert!(!is_stack_operational(&h, &Factorization5::parse("ε,ε,aa,b,b").unwrap()).unwrap());
        assert!(!is_stack_operational(&h, &Factorization5::parse("ε,a,ε,a,bb").unwrap()).unwrap());
        assert_eq!(
            is_stack_operational(&h, &Factorization5::parse("ε,a,ab,a,ε").unwrap()).unwrap_err(),
            PairError::CutMisaligned
        );
    }

    #[test]
    fn placeholders_attach_to_the_left() {
        let m = crate::normal_forms::tests::a2nbn();
        let n = epsilon_enhance(&m).unwrap();
        let h = record_history(&n, &induce(&m, "aaaabb").unwrap()).unwrap();
        assert_eq!(h.input.as_string(), "aaaab·b·");
        let f = Factorization5::parse("a,a,aab,b,ε").unwrap();
        assert_eq!(cut_boundaries(&h, &f).unwrap(), [2, 3, 7, 9]);
    }

    #[test]
    fn deduction_examples() {
        let base = Factorization5::parse("ε,a,b,c,ε").unwrap();
        // Re-cutting always absorbs at least one extra copy of x, so a
        // factorization is not deduced from itself.
        assert!(!is_deduced(&base, &base, 4));
        assert!(is_deduced(&base, &Factorization5::parse("ε,a,ab,c,c").unwrap(), 4));
        let cand = Factorization5::parse("a,a,b,c,c").unwrap();
        assert!(is_deduced(&base, &cand, 4));
        let off = Factorization5::parse("a,a,b,c,cc").unwrap();
        assert!(!is_deduced(&base, &off, 4));
    }

    #[test]
    fn anbn_sweep_has_no_failures() {
        let m = anbn();
        let n = epsilon_enhance(&m).unwrap();
        let mut stats = SweepStats::default();
        for w in crate::strings::all_strings(&['a', 'b'], 8) {
            certify_run(&m, &n, &w, 8, 5, &mut stats).unwrap();
        }
        assert!(stats.good_pairs > 0);
        assert!(stats.failures.is_empty(), "{:?}", &stats.failures[..stats.failures.len().min(5)]);
    }

    #[test]
    fn pigeonhole_on_constructed_run() {
        // Three pushes in state 0, three pops through states 1, 2, 1.
        let h = synthetic(&["Z", "aZ", "aaZ", "aaaZ", "aaZ", "aZ", "Z"], &[0, 0, 0, 0, 1, 2, 1]);
        assert_eq!(descending_repeat(&h, &[0, 1, 2, 3], &[3, 4, 5, 6]).unwrap(), Some((1, 3)));
        assert!(descending_repeat(&h, &[0, 1, 2, 3], &[2, 4, 5, 6]).is_err());
        let h = synthetic(&["Z", "aZ", "aaZ", "aaZ", "aZ", "Z"], &[0, 0, 0, 1, 2, 1]);
        assert_eq!(descending_repeat(&h, &[0, 1, 2], &[3, 4, 5]).unwrap(), Some((0, 2)));
    }
}
