//! Stack histories of real-time runs and their geometry.
//!
//! Boundary 0 is the initial configuration; boundary `i + 1` follows the move
//! on tape cell `i`, where cell 0 holds `¢` and the last cell holds `$`.

use serde::Serialize;
use thiserror::Error;

use crate::automaton::{Dpda, RunError};
use crate::normal_forms::EnhancedString;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HistoryError {
    #[error(transparent)]
    Run(#[from] RunError),
    #[error("machine made an ε-move; histories need a real-time machine")]
    NotRealTime,
    #[error("range contains no turning point")]
    NoTurningPoint,
    #[error("block [{0}, {1}] is not a valid range")]
    InvalidRange(usize, usize),
}

/// A closed range `[start, end]` of boundaries with `start < end`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Block {
    pub start: usize,
    pub end: usize,
}

impl Block {
    pub fn new(start: usize, end: usize) -> Block {
        Block { start, end }
    }
    pub fn contains(&self, t: usize) -> bool {
        self.start <= t && t <= self.end
    }
    pub fn contains_block(&self, b: &Block) -> bool {
        self.start <= b.start && b.end <= self.end
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StackHistory {
    pub input: EnhancedString,
    /// State at each boundary.
    pub states: Vec<usize>,
    /// Stack contents at each boundary, bottom-first.
    pub stacks: Vec<Vec<char>>,
}

impl StackHistory {
    pub fn len(&self) -> usize {
        self.states.len()
    }
    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }
    pub fn last(&self) -> usize {
        self.states.len() - 1
    }
    pub fn heights(&self) -> Vec<usize> {
        self.stacks.iter().map(Vec::len).collect()
    }
    pub fn height(&self, t: usize) -> usize {
        self.stacks[t].len()
    }
    /// Stack at boundary `t`, top-first.
    pub fn stack_top_first(&self, t: usize) -> String {
        self.stacks[t].iter().rev().collect()
    }
}

/// Records the history of the real-time machine `n` on `x`.
pub fn record_history(n: &Dpda, x: &EnhancedString) -> Result<StackHistory, HistoryError> {
    let out = n.run_chars(&x.symbols, None, true)?;
    let mut states = Vec::with_capacity(out.trace.len() + 1);
    let mut stacks = Vec::with_capacity(out.trace.len() + 1);
    let mut stack = vec![n.bottom()];
    states.push(n.initial());
    stacks.push(stack.clone());
    for mv in &out.trace {
        if mv.read.is_epsilon() {
            return Err(HistoryError::NotRealTime);
        }
        stack.pop();
        stack.extend(mv.push.iter().rev());
        states.push(mv.to);
        stacks.push(stack.clone());
    }
    Ok(StackHistory { input: x.clone(), states, stacks })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BlockShape {
    pub flat: bool,
    pub convex: bool,
    pub pseudo_convex: bool,
}

/// Shape of the block; heights are indexed by boundary.
pub fn classify_block(h: &[usize], b: Block) -> BlockShape {
    let seg = &h[b.start..=b.end];
    let flat = seg.iter().all(|&x| x == seg[0]);
    // Convex: non-decreasing up to some point, non-increasing after it.
    let mut i = 0;
    while i + 1 < seg.len() && seg[i + 1] >= seg[i] {
        i += 1;
    }
    while i + 1 < seg.len() && seg[i + 1] <= seg[i] {
        i += 1;
    }
    let convex = i + 1 == seg.len();
    BlockShape { flat, convex, pseudo_convex: is_pseudo_convex(h, b) }
}

/// Every boundary lies on or above the chord between the block ends.
pub fn is_pseudo_convex(h: &[usize], b: Block) -> bool {
    let (t1, t2) = (b.start as i64, b.end as i64);
    let (h1, h2) = (h[b.start] as i64, h[b.end] as i64);
    (b.start..=b.end).all(|s| {
        let s_ = s as i64;
        h[s] as i64 * (t2 - t1) >= h1 * (t2 - t1) + (h2 - h1) * (s_ - t1)
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hill {
    pub block: Block,
    pub bottom: usize,
    pub height: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Features {
    pub peaks: Vec<usize>,
    pub pits: Vec<usize>,
    pub plateaus: Vec<Block>,
    pub basins: Vec<Block>,
    pub elevated_plateaus: Vec<Block>,
    pub hills: Vec<Hill>,
}

fn is_peak(h: &[usize], t: usize) -> bool {
    t > 0 && t + 1 < h.len() && h[t - 1] < h[t] && h[t] > h[t + 1]
}

fn is_pit(h: &[usize], t: usize) -> bool {
    t > 0 && t + 1 < h.len() && h[t - 1] > h[t] && h[t] < h[t + 1]
}

/// Maximal runs of equal height spanning at least two boundaries.
pub fn plateaus(h: &[usize]) -> Vec<Block> {
    let mut out = Vec::new();
    let mut s = 0;
    for t in 1..=h.len() {
        if t == h.len() || h[t] != h[s] {
            if t - 1 > s {
                out.push(Block::new(s, t - 1));
            }
            s = t;
        }
    }
    out
}

/// At least one fringe exists and every existing fringe satisfies `pred`.
fn fringes_all(h: &[usize], b: Block, pred: impl Fn(usize, usize) -> bool) -> bool {
    let v = h[b.start];
    (b.start > 0 || b.end + 1 < h.len())
        && (b.start == 0 || pred(h[b.start - 1], v)) && (b.end + 1 == h.len() || pred(h[b.end + 1], v))
}

pub fn features(h: &[usize]) -> Features {
    let peaks: Vec<usize> = (0..h.len()).filter(|&t| is_peak(h, t)).collect();
    let pits: Vec<usize> = (0..h.len()).filter(|&t| is_pit(h, t)).collect();
    let plateaus = plateaus(h);
    let basins: Vec<Block> = plateaus.iter().copied().filter(|&b| fringes_all(h, b, |f, v| f > v)).collect();
    let elevated: Vec<Block> = plateaus.iter().copied().filter(|&b| fringes_all(h, b, |f, v| f < v)).collect();
    let mut hills = Vec::new();
    for t in 0..h.len() {
        for u in t + 1..h.len() {
            let b = Block::new(t, u);
            if is_hill(h, b, &peaks, &pits, &basins, &elevated) {
                let seg = &h[t..=u];
                let lo = *seg.iter().min().unwrap();
                let hi = *seg.iter().max().unwrap();
                hills.push(Hill { block: b, bottom: lo, height: hi - lo });
            }
        }
    }
    Features { peaks, pits, plateaus, basins, elevated_plateaus: elevated, hills }
}

fn is_hill(h: &[usize], b: Block, peaks: &[usize], pits: &[usize], basins: &[Block], elevated: &[Block]) -> bool {
    if h[b.start] != h[b.end] {
        return false;
    }
    let has_peak = peaks.iter().any(|&p| b.contains(p));
    let has_elevated = elevated.iter().any(|e| b.contains_block(e));
    if has_peak == has_elevated {
        return false;
    }
    if pits.iter().any(|&p| b.start < p && p < b.end) || basins.iter().any(|x| b.contains_block(x)) {
        return false;
    }
    // Boundary 0 counts as a pit.
    let pit_like = |t: usize| t == 0 || pits.contains(&t);
    let basin_left = |t: usize| basins.iter().any(|x| x.start == t);
    pit_like(b.start) || pit_like(b.end) || basin_left(b.start) || basin_left(b.end)
}

/// Peaks and right edges of elevated plateaus, in increasing order.
pub fn turning_points(h: &[usize]) -> Vec<usize> {
    let f = features(h);
    let mut tp: Vec<usize> = f.peaks;
    tp.extend(f.elevated_plateaus.iter().map(|b| b.end));
    tp.sort_unstable();
    tp.dedup();
    tp
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Turn {
    pub block: Block,
    pub turning_point: usize,
    /// Height at the left end minus height at the right end.
    pub gain: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TurnPartition {
    pub range: Block,
    pub turns: Vec<Turn>,
    /// Height at the start of the range minus height at its end.
    pub true_gain: i64,
}

/// Splits `range` into consecutive turns, each ending at the lowest point
/// (leftmost when tied) between its turning point and the next one.
pub fn turn_partition(h: &[usize], range: Block) -> Result<TurnPartition, HistoryError> {
    if range.start >= range.end || range.end >= h.len() {
        return Err(HistoryError::InvalidRange(range.start, range.end));
    }
    let tps: Vec<usize> = turning_points(h).into_iter().filter(|&t| range.contains(t)).collect();
    if tps.is_empty() {
        return Err(HistoryError::NoTurningPoint);
    }
    let mut cuts = vec![range.start];
    for w in tps.windows(2) {
        let lo = (w[0] + 1..w[1]).min_by_key(|&t| (h[t], t)).expect("turning points are never adjacent");
        cuts.push(lo);
    }
    cuts.push(range.end);
    let turns = tps
        .iter()
        .enumerate()
        .map(|(i, &tp)| {
            let block = Block::new(cuts[i], cuts[i + 1]);
            Turn { block, turning_point: tp, gain: h[block.start] as i64 - h[block.end] as i64 }
        })
        .collect();
    Ok(TurnPartition { range, turns, true_gain: h[range.start] as i64 - h[range.end] as i64 })
}

/// Checks the turn conditions for a block directly from the heights.
pub fn is_turn(h: &[usize], b: Block) -> bool {
    if b.start >= b.end || b.end >= h.len() {
        return false;
    }
    let tps = turning_points(h);
    if tps.iter().filter(|&&t| b.contains(t)).count() != 1 {
        return false;
    }
    let left_ok = b.start == 0 || on_downward_slope(h, b.start - 1, b.start);
    let right_ok = b.end + 1 == h.len() || {
        let f = b.end + 1;
        on_upward_slope(h, b.end, f) || features(h).basins.iter().any(|x| x.contains(f))
    };
    left_ok && right_ok
}

/// The step `a -> a + 1` lies in a non-increasing stretch that is not flat.
fn on_downward_slope(h: &[usize], a: usize, b: usize) -> bool {
    if h[a] < h[b] {
        return false;
    }
    let mut s = a;
    while s > 0 && h[s - 1] >= h[s] {
        s -= 1;
    }
    let mut e = b;
    while e + 1 < h.len() && h[e + 1] <= h[e] {
        e += 1;
    }
    h[s] != h[e]
}

fn on_upward_slope(h: &[usize], a: usize, b: usize) -> bool {
    if h[a] > h[b] {
        return false;
    }
    let mut s = a;
    while s > 0 && h[s - 1] <= h[s] {
        s -= 1;
    }
    let mut e = b;
    while e + 1 < h.len() && h[e + 1] >= h[e] {
        e += 1;
    }
    h[s] != h[e]
}
