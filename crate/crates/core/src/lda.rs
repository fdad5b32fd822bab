//! Deterministic d-limited automata: two-way machines over a layered tape
//! alphabet where a cell may only be rewritten during its first d visits.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::automaton::{LEFT_END, RIGHT_END};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LdaTransition {
    pub from: String,
    pub read: char,
    pub to: String,
    pub write: char,
    /// `-1` or `+1`.
    pub dir: i8,
}

/// Definition file format: layers `Γ⁽⁰⁾ = Σ, Γ⁽¹⁾, …, Γ⁽ᵈ⁾`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lda {
    pub limit: usize,
    pub states: Vec<String>,
    pub layers: Vec<Vec<char>>,
    pub initial: String,
    pub accept: Vec<String>,
    pub reject: Vec<String>,
    pub transitions: Vec<LdaTransition>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum LdaViolation {
    LayerCount { limit: usize, layers: usize },
    LayersOverlap { symbol: char },
    EndmarkerLayer { symbol: char },
    UnknownState { name: String },
    UnknownSymbol { symbol: char },
    BadDirection { transition: usize },
    FromHalting { transition: usize },
    Duplicate { transition: usize },
    /// A symbol of the top layer is rewritten.
    TopLayerRewritten { transition: usize },
    /// The written symbol is not in the layer the rules demand.
    WrongLayer { transition: usize, read_layer: usize, write_layer: usize, expected: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LdaReport {
    pub violations: Vec<LdaViolation>,
}

impl LdaReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize)]
pub enum LdaError {
    #[error("step budget of {0} exhausted")]
    BudgetExhausted(u64),
    #[error("head left the endmarked region at step {0}")]
    HeadOutOfTape(u64),
    #[error("no transition for state {state} on {symbol:?}")]
    UndefinedTransition { state: String, symbol: char },
    #[error("symbol {0:?} is not an input symbol")]
    InvalidSymbol(char),
    #[error("invalid machine: {0}")]
    Invalid(String),
    #[error("malformed definition: {0}")]
    Json(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LdaStep {
    pub state: String,
    /// Head position before the move; 0 is `¢`.
    pub head: usize,
    pub read: char,
    pub write: char,
    pub dir: i8,
    /// Tape after the move.
    pub tape: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LdaOutcome {
    pub accepted: bool,
    pub final_state: String,
    pub steps: u64,
    pub trace: Vec<LdaStep>,
}

/// Layer written when a symbol of layer `i` is read and the head moves by
/// `dir`: a turn counts as two visits. Layers above `d` are frozen at `d`.
pub fn next_layer(i: usize, dir: i8, d: usize) -> usize {
    if i >= d {
        return d;
    }
    let step = match (i.is_multiple_of(2), dir > 0) {
        (true, true) | (false, false) => 1,
        _ => 2,
    };
    (i + step).min(d)
}

pub fn default_lda_budget(input_len: usize) -> u64 {
    50 * (input_len as u64 + 2).pow(2)
}

impl Lda {
    pub fn from_json(text: &str) -> Result<Lda, LdaError> {
        serde_json::from_str(text).map_err(|e| LdaError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("definitions serialize")
    }

    pub fn input_alphabet(&self) -> &[char] {
        self.layers.first().map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn layer_of(&self, c: char) -> Option<usize> {
        self.layers.iter().position(|l| l.contains(&c))
    }

    fn is_halting(&self, s: &str) -> bool {
        self.accept.iter().chain(&self.reject).any(|h| h == s)
    }
}

pub fn validate_lda(m: &Lda) -> LdaReport {
    let mut v = Vec::new();
    let d = m.limit;
    if m.layers.len() != d + 1 {
        v.push(LdaViolation::LayerCount { limit: d, layers: m.layers.len() });
    }
    let mut seen = HashMap::new();
    for (i, layer) in m.layers.iter().enumerate() {
        for &c in layer {
            if seen.insert(c, i).is_some() {
                v.push(LdaViolation::LayersOverlap { symbol: c });
            }
        }
    }
    for e in [LEFT_END, RIGHT_END] {
        if seen.get(&e) != Some(&d) {
            v.push(LdaViolation::EndmarkerLayer { symbol: e });
        }
    }
    let known = |s: &String| m.states.contains(s);
    for s in std::iter::once(&m.initial).chain(&m.accept).chain(&m.reject) {
        if !known(s) {
            v.push(LdaViolation::UnknownState { name: s.clone() });
        }
    }
    let mut keys = HashMap::new();
    for (t, tr) in m.transitions.iter().enumerate() {
        for s in [&tr.from, &tr.to] {
            if !known(s) {
                v.push(LdaViolation::UnknownState { name: s.clone() });
            }
        }
        if tr.dir != 1 && tr.dir != -1 {
            v.push(LdaViolation::BadDirection { transition: t });
        }
        if m.is_halting(&tr.from) {
            v.push(LdaViolation::FromHalting { transition: t });
        }
        if keys.insert((tr.from.clone(), tr.read), t).is_some() {
            v.push(LdaViolation::Duplicate { transition: t });
        }
        let (Some(&i), Some(&j)) = (seen.get(&tr.read), seen.get(&tr.write)) else {
            for c in [tr.read, tr.write] {
                if !seen.contains_key(&c) {
                    v.push(LdaViolation::UnknownSymbol { symbol: c });
                }
            }
            continue;
        };
        if i == d {
            if tr.read != tr.write {
                v.push(LdaViolation::TopLayerRewritten { transition: t });
            }
            continue;
        }
        let expected = next_layer(i, tr.dir, d);
        if j != expected {
            v.push(LdaViolation::WrongLayer { transition: t, read_layer: i, write_layer: j, expected });
        }
    }
    LdaReport { violations: v }
}

/// Two-way run over `¢ input $`, starting on `¢`. A move into a halting state
/// ends the run without checking where the head went.
pub fn run_lda(m: &Lda, input: &str, budget: Option<u64>) -> Result<LdaOutcome, LdaError> {
    let report = validate_lda(m);
    if !report.is_valid() {
        return Err(LdaError::Invalid(format!("{:?}", report.violations)));
    }
    if let Some(c) = input.chars().find(|c| !m.input_alphabet().contains(c)) {
        return Err(LdaError::InvalidSymbol(c));
    }
    let delta: HashMap<(&str, char), &LdaTransition> =
        m.transitions.iter().map(|t| ((t.from.as_str(), t.read), t)).collect();
    let mut tape: Vec<char> = std::iter::once(LEFT_END).chain(input.chars()).chain(std::iter::once(RIGHT_END)).collect();
    let budget = budget.unwrap_or_else(|| default_lda_budget(input.chars().count()));
    let mut state = m.initial.clone();
    let mut head = 0usize;
    let mut trace = Vec::new();
    let mut steps = 0u64;
    while !m.is_halting(&state) {
        if steps >= budget {
            return Err(LdaError::BudgetExhausted(budget));
        }
        let read = tape[head];
        let t = *delta
            .get(&(state.as_str(), read))
            .ok_or_else(|| LdaError::UndefinedTransition { state: state.clone(), symbol: read })?;
        tape[head] = t.write;
        trace.push(LdaStep { state: state.clone(), head, read, write: t.write, dir: t.dir, tape: tape.iter().collect() });
        steps += 1;
        state = t.to.clone();
        if m.is_halting(&state) {
            break;
        }
        let next = head as i64 + t.dir as i64;
        if next < 0 || next as usize >= tape.len() {
            return Err(LdaError::HeadOutOfTape(steps));
        }
        head = next as usize;
    }
    let accepted = m.accept.contains(&state);
    Ok(LdaOutcome { accepted, final_state: state, steps, trace })
}

/// True iff no cell between the endmarkers is rewritten after its first `d`
/// visits. A visit is a maximal stay of the head on a cell; one that turns
/// the head around counts twice. A rewrite is allowed while the visits
/// before the current one number fewer than `d`.
pub fn visit_discipline_check(trace: &[LdaStep], d: usize) -> bool {
    let Some(last) = trace.iter().map(|s| s.head).max() else { return true };
    let mut visits = vec![0usize; last + 2];
    let mut arrived_from: Option<i8> = None;
    for s in trace {
        let is_endmarker = s.read == LEFT_END || s.read == RIGHT_END;
        if !is_endmarker && s.read != s.write && visits[s.head] >= d {
            return false;
        }
        let turn = matches!(arrived_from, Some(a) if a != s.dir);
        visits[s.head] += if turn { 2 } else { 1 };
        arrived_from = Some(s.dir);
    }
    true
}

/// Deterministic 2-lda for `{aⁿbⁿ}`. Phase one rewrites the a's; each b turns
/// the head left to cancel the nearest remaining a, then the head runs right
/// to the next b. A final left sweep checks that no a is left.
pub fn anbn_lda() -> Lda {
    let states = ["ra", "l", "r", "check", "acc", "rej"].map(String::from).to_vec();
    let layers = vec![vec!['a', 'b'], vec!['A'], vec![LEFT_END, RIGHT_END, 'X', 'Y']];
    let mut t = Vec::new();
    let mut go = |from: &str, read: char, to: &str, write: char, dir: i8| {
        t.push(LdaTransition { from: from.into(), read, to: to.into(), write, dir })
    };
    go("ra", LEFT_END, "ra", LEFT_END, 1);
    go("ra", 'a', "ra", 'A', 1);
    go("ra", 'b', "l", 'Y', -1);
    go("ra", RIGHT_END, "check", RIGHT_END, -1);
    go("l", 'Y', "l", 'Y', -1);
    go("l", 'X', "l", 'X', -1);
    go("l", 'A', "r", 'X', 1);
    go("l", LEFT_END, "rej", LEFT_END, 1);
    go("r", 'X', "r", 'X', 1);
    go("r", 'Y', "r", 'Y', 1);
    go("r", 'b', "l", 'Y', -1);
    go("r", 'a', "rej", 'A', 1);
    go("r", RIGHT_END, "check", RIGHT_END, -1);
    go("check", 'X', "check", 'X', -1);
    go("check", 'Y', "check", 'Y', -1);
    go("check", 'A', "rej", 'X', -1);
    go("check", LEFT_END, "acc", LEFT_END, 1);
    Lda {
        limit: 2,
        states,
        layers,
        initial: "ra".into(),
        accept: vec!["acc".into()],
        reject: vec!["rej".into()],
        transitions: t,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strings::all_strings;

    fn anbn(w: &str) -> bool {
        let a = w.chars().take_while(|&c| c == 'a').count();
        w[a..].chars().all(|c| c == 'b') && w.len() == 2 * a
    }

    #[test]
    fn authored_machine_is_valid() {
        let r = validate_lda(&anbn_lda());
        assert!(r.is_valid(), "{r:?}");
    }

    #[test]
    fn examples() {
        let m = anbn_lda();
        assert!(run_lda(&m, "aabb", None).unwrap().accepted);
        assert!(!run_lda(&m, "abba", None).unwrap().accepted);
        assert!(run_lda(&m, "", None).unwrap().accepted);
    }

    #[test]
    fn agrees_with_definition_and_keeps_discipline() {
        let m = anbn_lda();
        for w in all_strings(&['a', 'b'], 10) {
            let out = run_lda(&m, &w, None).unwrap();
            assert_eq!(out.accepted, anbn(&w), "{w}");
            assert!(visit_discipline_check(&out.trace, 2), "{w}");
        }
    }

    #[test]
    fn layer_arithmetic() {
        assert_eq!(next_layer(0, 1, 2), 1);
        assert_eq!(next_layer(0, -1, 2), 2);
        assert_eq!(next_layer(1, -1, 2), 2);
        assert_eq!(next_layer(1, 1, 4), 3);
        assert_eq!(next_layer(1, 1, 2), 2);
        assert_eq!(next_layer(2, 1, 4), 3);
        assert_eq!(next_layer(2, -1, 4), 4);
    }

    #[test]
    fn layer_violations_are_reported() {
        let mut m = anbn_lda();
        // Writing a base-layer symbol over A.
        m.transitions.push(LdaTransition { from: "check".into(), read: 'a', to: "rej".into(), write: 'a', dir: 1 });
        let i = m.transitions.iter().position(|t| t.from == "l" && t.read == 'A').unwrap();
        m.transitions[i].write = 'a';
        let r = validate_lda(&m);
        assert!(r.violations.iter().any(|v| matches!(v, LdaViolation::WrongLayer { read_layer: 1, write_layer: 0, .. })));
        let mut m = anbn_lda();
        m.transitions[3].write = 'X';
        assert!(validate_lda(&m).violations.contains(&LdaViolation::TopLayerRewritten { transition: 3 }));
    }

    #[test]
    fn synthetic_late_rewrite_fails_discipline() {
        let step = |head, read, write, dir| LdaStep { state: "q".into(), head, read, write, dir, tape: String::new() };
        // Cell 1 is visited on the way right, turned on, and then rewritten again.
        let trace = vec![step(0, '¢', '¢', 1), step(1, 'a', 'A', 1), step(2, 'b', 'Y', -1), step(1, 'A', 'X', 1), step(2, 'Y', 'Y', -1), step(1, 'X', 'Z', 1)];
        assert!(!visit_discipline_check(&trace, 2));
        assert!(visit_discipline_check(&trace[..4], 2));
        assert!(visit_discipline_check(&[], 2));
    }

    #[test]
    fn budget_and_head_errors() {
        let mut m = anbn_lda();
        assert!(matches!(run_lda(&m, "aabb", Some(3)), Err(LdaError::BudgetExhausted(3))));
        let i = m.transitions.iter().position(|t| t.from == "ra" && t.read == LEFT_END).unwrap();
        m.transitions[i].dir = -1;
        assert!(matches!(run_lda(&m, "ab", None), Err(LdaError::HeadOutOfTape(1))));
    }

    #[test]
    fn json_round_trip() {
        let m = anbn_lda();
        assert_eq!(Lda::from_json(&m.to_json()).unwrap(), m);
    }
}
