//! Deterministic pushdown automata with endmarkers.
//!
//! Stacks are written top-first: in a transition `(p, σ, a) -> (q, w)` the
//! string `w` replaces the top symbol `a`, and `w[0]` becomes the new top.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const LEFT_END: char = '¢';
pub const RIGHT_END: char = '$';
/// Reserved for ε-enhanced inputs; machines that use it cannot be enhanced.
pub const PLACEHOLDER: char = '·';

/// Hard ceiling on the number of moves of any single run.
pub const HARD_STEP_CAP: u64 = 50_000_000;

const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Read {
    Epsilon,
    Symbol(char),
}

impl Read {
    pub fn is_epsilon(self) -> bool {
        matches!(self, Read::Epsilon)
    }
}

impl fmt::Display for Read {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Read::Epsilon => write!(f, "ε"),
            Read::Symbol(c) => write!(f, "{c}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transition {
    pub from: usize,
    pub read: Read,
    pub top: char,
    pub to: usize,
    /// Replacement for the top symbol, top-first.
    pub push: Vec<char>,
}

/// Raw components handed to [`Dpda::new`].
#[derive(Clone, Debug)]
pub struct DpdaParts {
    pub states: Vec<String>,
    pub input_alphabet: Vec<char>,
    pub stack_alphabet: Vec<char>,
    pub bottom: char,
    pub initial: usize,
    pub accept: Vec<usize>,
    pub reject: Vec<usize>,
    pub transitions: Vec<Transition>,
    /// Declared push size; computed from the transitions when `None`.
    pub push_size: Option<usize>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("state index {0} out of range")]
    UnknownState(usize),
    #[error("symbol {0:?} is not in the relevant alphabet")]
    UnknownSymbol(char),
    #[error("symbol {0:?} is reserved")]
    ReservedSymbol(char),
    #[error("symbol {0:?} listed twice")]
    DuplicateSymbol(char),
    #[error("two transitions share the key ({state}, {read}, {top})")]
    DuplicateTransition { state: String, read: Read, top: char },
    #[error("bottom marker {0:?} is not a stack symbol")]
    MissingBottom(char),
    #[error("machine has no states")]
    NoStates,
}

#[derive(Clone, Debug)]
pub struct Dpda {
    states: Vec<String>,
    input_alphabet: Vec<char>,
    stack_alphabet: Vec<char>,
    bottom: char,
    initial: usize,
    accepting: Vec<bool>,
    rejecting: Vec<bool>,
    transitions: Vec<Transition>,
    push_size: usize,
    input_index: HashMap<char, usize>,
    stack_index: HashMap<char, usize>,
    table: Vec<u32>,
}

/// One move of a run, as recorded in a trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Move {
    pub from: usize,
    pub read: Read,
    pub top: char,
    pub to: usize,
    pub push: Vec<char>,
    /// Tape cell index before the move (0 is ¢).
    pub position: usize,
    pub height_after: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunOutcome {
    pub accepted: bool,
    pub final_state: usize,
    pub steps: u64,
    /// Number of tape cells consumed, endmarkers included.
    pub consumed: usize,
    pub trace: Vec<Move>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize)]
pub enum RunError {
    #[error("step budget of {budget} moves exhausted")]
    BudgetExhausted { budget: u64 },
    #[error("no transition for state {state}, read {read}, top {top:?}")]
    UndefinedTransition { state: String, read: Read, top: char },
    #[error("input symbol {0:?} is not in the input alphabet")]
    InvalidSymbol(char),
    #[error("transition out of state {state} emptied the stack")]
    BottomPopped { state: String },
    #[error("machine in state {state} has no move after the right endmarker")]
    RanOffTape { state: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    BothEpsilonAndRead { state: String, top: char, symbol: char },
    NoMove { state: String, top: char, symbol: char },
    BottomRemoved { transition: usize },
    BottomMisplaced { transition: usize },
    HaltingStateMoves { transition: usize },
    AcceptRejectOverlap { state: String },
    PushTooLong { transition: usize, length: usize, push_size: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A configuration in the middle of a run. The stack is bottom-first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Config {
    pub state: usize,
    pub stack: Vec<u16>,
    pub position: usize,
}

pub(crate) enum Step {
    Moved { transition: usize },
    Halted,
}

impl Dpda {
    pub fn new(parts: DpdaParts) -> Result<Self, ModelError> {
        let n = parts.states.len();
        if n == 0 {
            return Err(ModelError::NoStates);
        }
        let mut input_index = HashMap::new();
        for (i, &c) in parts.input_alphabet.iter().enumerate() {
            if c == LEFT_END || c == RIGHT_END {
                return Err(ModelError::ReservedSymbol(c));
            }
            if input_index.insert(c, i).is_some() {
                return Err(ModelError::DuplicateSymbol(c));
            }
        }
        let mut stack_index = HashMap::new();
        for (i, &c) in parts.stack_alphabet.iter().enumerate() {
            if stack_index.insert(c, i).is_some() {
                return Err(ModelError::DuplicateSymbol(c));
            }
        }
        if !stack_index.contains_key(&parts.bottom) {
            return Err(ModelError::MissingBottom(parts.bottom));
        }
        let check_state = |s: usize| if s < n { Ok(()) } else { Err(ModelError::UnknownState(s)) };
        check_state(parts.initial)?;
        let mut accepting = vec![false; n];
        let mut rejecting = vec![false; n];
        for &s in &parts.accept {
            check_state(s)?;
            accepting[s] = true;
        }
        for &s in &parts.reject {
            check_state(s)?;
            rejecting[s] = true;
        }
        let reads = parts.input_alphabet.len() + 3;
        let gammas = parts.stack_alphabet.len();
        let mut table = vec![NONE; n * reads * gammas];
        let mut max_push = 0;
        for (ti, t) in parts.transitions.iter().enumerate() {
            check_state(t.from)?;
            check_state(t.to)?;
            let r = match t.read {
                Read::Epsilon => 0,
                Read::Symbol(LEFT_END) => 1,
                Read::Symbol(RIGHT_END) => 2,
                Read::Symbol(c) => 3 + *input_index.get(&c).ok_or(ModelError::UnknownSymbol(c))?,
            };
            let a = *stack_index.get(&t.top).ok_or(ModelError::UnknownSymbol(t.top))?;
            for c in &t.push {
                if !stack_index.contains_key(c) {
                    return Err(ModelError::UnknownSymbol(*c));
                }
            }
            let slot = &mut table[(t.from * reads + r) * gammas + a];
            if *slot != NONE {
                return Err(ModelError::DuplicateTransition {
                    state: parts.states[t.from].clone(),
                    read: t.read,
                    top: t.top,
                });
            }
            *slot = ti as u32;
            max_push = max_push.max(t.push.len());
        }
        Ok(Dpda {
            push_size: parts.push_size.unwrap_or(max_push.max(1)),
            states: parts.states,
            input_alphabet: parts.input_alphabet,
            stack_alphabet: parts.stack_alphabet,
            bottom: parts.bottom,
            initial: parts.initial,
            accepting,
            rejecting,
            transitions: parts.transitions,
            input_index,
            stack_index,
            table,
        })
    }

    pub fn parts(&self) -> DpdaParts {
        DpdaParts {
            states: self.states.clone(),
            input_alphabet: self.input_alphabet.clone(),
            stack_alphabet: self.stack_alphabet.clone(),
            bottom: self.bottom,
            initial: self.initial,
            accept: (0..self.states.len()).filter(|&s| self.accepting[s]).collect(),
            reject: (0..self.states.len()).filter(|&s| self.rejecting[s]).collect(),
            transitions: self.transitions.clone(),
            push_size: Some(self.push_size),
        }
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }
    pub fn state_name(&self, s: usize) -> &str {
        &self.states[s]
    }
    pub fn state_count(&self) -> usize {
        self.states.len()
    }
    pub fn input_alphabet(&self) -> &[char] {
        &self.input_alphabet
    }
    pub fn stack_alphabet(&self) -> &[char] {
        &self.stack_alphabet
    }
    pub fn bottom(&self) -> char {
        self.bottom
    }
    pub fn initial(&self) -> usize {
        self.initial
    }
    pub fn push_size(&self) -> usize {
        self.push_size
    }
    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }
    pub fn is_accepting(&self, s: usize) -> bool {
        self.accepting[s]
    }
    pub fn is_rejecting(&self, s: usize) -> bool {
        self.rejecting[s]
    }
    pub fn is_halting(&self, s: usize) -> bool {
        self.accepting[s] || self.rejecting[s]
    }

    fn read_slot(&self, read: Read) -> Option<usize> {
        match read {
            Read::Epsilon => Some(0),
            Read::Symbol(LEFT_END) => Some(1),
            Read::Symbol(RIGHT_END) => Some(2),
            Read::Symbol(c) => self.input_index.get(&c).map(|i| i + 3),
        }
    }

    fn slot(&self, state: usize, read: usize, top: usize) -> u32 {
        let reads = self.input_alphabet.len() + 3;
        self.table[(state * reads + read) * self.stack_alphabet.len() + top]
    }

    /// The transition defined for `(state, read, top)`, if any.
    pub fn transition(&self, state: usize, read: Read, top: char) -> Option<&Transition> {
        let r = self.read_slot(read)?;
        let a = *self.stack_index.get(&top)?;
        match self.slot(state, r, a) {
            NONE => None,
            t => Some(&self.transitions[t as usize]),
        }
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for s in 0..self.states.len() {
            if self.accepting[s] && self.rejecting[s] {
                violations.push(Violation::AcceptRejectOverlap { state: self.states[s].clone() });
            }
        }
        let mut symbols = vec![LEFT_END, RIGHT_END];
        symbols.extend(self.input_alphabet.iter().copied());
        for p in 0..self.states.len() {
            if self.is_halting(p) {
                continue;
            }
            for &a in &self.stack_alphabet {
                let eps = self.transition(p, Read::Epsilon, a).is_some();
                for &c in &symbols {
                    let rd = self.transition(p, Read::Symbol(c), a).is_some();
                    let state = self.states[p].clone();
                    if eps && rd {
                        violations.push(Violation::BothEpsilonAndRead { state, top: a, symbol: c });
                    } else if !eps && !rd {
                        violations.push(Violation::NoMove { state, top: a, symbol: c });
                    }
                }
            }
        }
        for (i, t) in self.transitions.iter().enumerate() {
            if self.is_halting(t.from) {
                violations.push(Violation::HaltingStateMoves { transition: i });
            }
            if t.top == self.bottom {
                if t.push.last() != Some(&self.bottom) {
                    violations.push(Violation::BottomRemoved { transition: i });
                } else if t.push[..t.push.len() - 1].contains(&self.bottom) {
                    violations.push(Violation::BottomMisplaced { transition: i });
                }
            } else if t.push.contains(&self.bottom) {
                violations.push(Violation::BottomMisplaced { transition: i });
            }
            if t.push.len() > self.push_size {
                violations.push(Violation::PushTooLong {
                    transition: i,
                    length: t.push.len(),
                    push_size: self.push_size,
                });
            }
        }
        ValidationReport { violations }
    }

    /// Default step budget for an input of the given length.
    pub fn default_budget(&self, input_len: usize) -> u64 {
        let cells = input_len as u64 + 2;
        let bound = self.push_size.max(1) as u64 * cells + 1;
        (10 * cells * bound).min(HARD_STEP_CAP)
    }

    /// Converts an input string to tape cells, endmarkers included.
    pub(crate) fn tape(&self, input: &[char]) -> Result<Vec<u16>, RunError> {
        let mut tape = Vec::with_capacity(input.len() + 2);
        tape.push(1);
        for &c in input {
            let i = self.input_index.get(&c).ok_or(RunError::InvalidSymbol(c))?;
            tape.push((*i + 3) as u16);
        }
        tape.push(2);
        Ok(tape)
    }

    pub fn initial_config(&self) -> Config {
        Config { state: self.initial, stack: vec![self.stack_index[&self.bottom] as u16], position: 0 }
    }

    fn read_of_slot(&self, r: u16) -> Read {
        match r {
            1 => Read::Symbol(LEFT_END),
            2 => Read::Symbol(RIGHT_END),
            r => Read::Symbol(self.input_alphabet[r as usize - 3]),
        }
    }

    /// Performs one move on `tape`.
    pub(crate) fn step(&self, cfg: &mut Config, tape: &[u16]) -> Result<Step, RunError> {
        if self.is_halting(cfg.state) {
            return Ok(Step::Halted);
        }
        let top = *cfg.stack.last().expect("bottom marker is never popped") as usize;
        let mut t = self.slot(cfg.state, 0, top);
        let mut read_cell = false;
        if t == NONE {
            if cfg.position >= tape.len() {
                return Err(RunError::RanOffTape { state: self.states[cfg.state].clone() });
            }
            let r = tape[cfg.position];
            t = self.slot(cfg.state, r as usize, top);
            if t == NONE {
                return Err(RunError::UndefinedTransition {
                    state: self.states[cfg.state].clone(),
                    read: self.read_of_slot(r),
                    top: self.stack_alphabet[top],
                });
            }
            read_cell = true;
        }
        let tr = &self.transitions[t as usize];
        cfg.stack.pop();
        for c in tr.push.iter().rev() {
            cfg.stack.push(self.stack_index[c] as u16);
        }
        if cfg.stack.is_empty() {
            return Err(RunError::BottomPopped { state: self.states[tr.from].clone() });
        }
        cfg.state = tr.to;
        if read_cell {
            cfg.position += 1;
        }
        Ok(Step::Moved { transition: t as usize })
    }

    /// Runs on `input` and records a full trace.
    pub fn run(&self, input: &str, budget: Option<u64>) -> Result<RunOutcome, RunError> {
        let chars: Vec<char> = input.chars().collect();
        self.run_chars(&chars, budget, true)
    }

    /// Acceptance only, without a trace.
    pub fn accepts(&self, input: &str, budget: Option<u64>) -> Result<bool, RunError> {
        let chars: Vec<char> = input.chars().collect();
        self.run_chars(&chars, budget, false).map(|o| o.accepted)
    }

    pub fn accepts_chars(&self, input: &[char], budget: Option<u64>) -> Result<bool, RunError> {
        self.run_chars(input, budget, false).map(|o| o.accepted)
    }

    pub fn run_chars(&self, input: &[char], budget: Option<u64>, trace: bool) -> Result<RunOutcome, RunError> {
        let tape = self.tape(input)?;
        let budget = budget.unwrap_or_else(|| self.default_budget(input.len()));
        let mut cfg = self.initial_config();
        let mut steps = 0u64;
        let mut moves = Vec::new();
        loop {
            let position = cfg.position;
            match self.step(&mut cfg, &tape)? {
                Step::Halted => break,
                Step::Moved { transition, .. } => {
                    steps += 1;
                    if trace {
                        let t = &self.transitions[transition];
                        moves.push(Move {
                            from: t.from,
                            read: t.read,
                            top: t.top,
                            to: t.to,
                            push: t.push.clone(),
                            position,
                            height_after: cfg.stack.len(),
                        });
                    }
                    if steps >= budget && !self.is_halting(cfg.state) {
                        return Err(RunError::BudgetExhausted { budget });
                    }
                }
            }
        }
        Ok(RunOutcome {
            accepted: self.accepting[cfg.state],
            final_state: cfg.state,
            steps,
            consumed: cfg.position,
            trace: moves,
        })
    }

    /// Renders a bottom-first stack of internal indices as a top-first string.
    pub fn stack_string(&self, stack: &[u16]) -> String {
        stack.iter().rev().map(|&i| self.stack_alphabet[i as usize]).collect()
    }

    pub fn stack_symbol(&self, i: u16) -> char {
        self.stack_alphabet[i as usize]
    }

    /// The machine with accepting and rejecting states swapped.
    pub fn complement(&self) -> Dpda {
        let mut out = self.clone();
        std::mem::swap(&mut out.accepting, &mut out.rejecting);
        out
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("malformed machine file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("field {field}: {message}")]
    Field { field: String, message: String },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("machine fails validation: {0:?}")]
    Invalid(ValidationReport),
}

#[derive(Serialize, Deserialize)]
struct TransitionFile {
    from: String,
    read: String,
    top: String,
    to: String,
    push: String,
}

#[derive(Serialize, Deserialize)]
struct MachineFile {
    states: Vec<String>,
    input_alphabet: Vec<String>,
    stack_alphabet: Vec<String>,
    bottom_marker: String,
    initial_state: String,
    accept_states: Vec<String>,
    reject_states: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    push_size: Option<usize>,
    transitions: Vec<TransitionFile>,
}

fn one_char(field: &str, s: &str) -> Result<char, LoadError> {
    let mut it = s.chars();
    match (it.next(), it.next()) {
        (Some(c), None) => Ok(c),
        _ => Err(LoadError::Field { field: field.into(), message: format!("expected one symbol, got {s:?}") }),
    }
}

impl Dpda {
    /// Parses a machine-definition file and refuses machines that fail validation.
    pub fn from_json(text: &str) -> Result<Dpda, LoadError> {
        let m = Self::from_json_unchecked(text)?;
        let report = m.validate();
        if report.is_valid() {
            Ok(m)
        } else {
            Err(LoadError::Invalid(report))
        }
    }

    pub fn from_json_unchecked(text: &str) -> Result<Dpda, LoadError> {
        let file: MachineFile = serde_json::from_str(text)?;
        let index: HashMap<&str, usize> = file.states.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let state = |field: &str, s: &str| {
            index.get(s).copied().ok_or_else(|| LoadError::Field {
                field: field.into(),
                message: format!("unknown state {s:?}"),
            })
        };
        let chars = |field: &str, v: &[String]| v.iter().map(|s| one_char(field, s)).collect::<Result<Vec<_>, _>>();
        let mut transitions = Vec::new();
        for t in &file.transitions {
            let read = if t.read == "ε" || t.read.is_empty() {
                Read::Epsilon
            } else {
                Read::Symbol(one_char("read", &t.read)?)
            };
            transitions.push(Transition {
                from: state("from", &t.from)?,
                read,
                top: one_char("top", &t.top)?,
                to: state("to", &t.to)?,
                push: if t.push == "ε" { Vec::new() } else { t.push.chars().collect() },
            });
        }
        Ok(Dpda::new(DpdaParts {
            input_alphabet: chars("input_alphabet", &file.input_alphabet)?,
            stack_alphabet: chars("stack_alphabet", &file.stack_alphabet)?,
            bottom: one_char("bottom_marker", &file.bottom_marker)?,
            initial: state("initial_state", &file.initial_state)?,
            accept: file.accept_states.iter().map(|s| state("accept_states", s)).collect::<Result<_, _>>()?,
            reject: file.reject_states.iter().map(|s| state("reject_states", s)).collect::<Result<_, _>>()?,
            transitions,
            push_size: file.push_size,
            states: file.states,
        })?)
    }

    pub fn to_json(&self) -> String {
        let name = |s: usize| self.states[s].clone();
        let file = MachineFile {
            states: self.states.clone(),
            input_alphabet: self.input_alphabet.iter().map(|c| c.to_string()).collect(),
            stack_alphabet: self.stack_alphabet.iter().map(|c| c.to_string()).collect(),
            bottom_marker: self.bottom.to_string(),
            initial_state: name(self.initial),
            accept_states: (0..self.states.len()).filter(|&s| self.accepting[s]).map(name).collect(),
            reject_states: (0..self.states.len()).filter(|&s| self.rejecting[s]).map(name).collect(),
            push_size: Some(self.push_size),
            transitions: self
                .transitions
                .iter()
                .map(|t| TransitionFile {
                    from: name(t.from),
                    read: t.read.to_string(),
                    top: t.top.to_string(),
                    to: name(t.to),
                    push: if t.push.is_empty() { "ε".into() } else { t.push.iter().collect() },
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("machine serializes")
    }
}

/// Hand-written {aⁿbⁿ} machine in ideal shape, used across the test suites.
pub fn anbn() -> Dpda {
    // states: 0 = reading a, 1 = reading b, 2 = accept, 3 = reject
    let mut t = Vec::new();
    let tr = |from, read, top, to, push: &str| Transition { from, read, top, to, push: push.chars().collect() };
    let sym = Read::Symbol;
    t.push(tr(0, sym(LEFT_END), 'Z', 0, "Z"));
    t.push(tr(0, sym('a'), 'Z', 0, "AZ"));
    t.push(tr(0, sym('a'), 'A', 0, "AA"));
    t.push(tr(0, sym('b'), 'Z', 3, "Z"));
    t.push(tr(0, sym('b'), 'A', 1, ""));
    t.push(tr(0, sym(RIGHT_END), 'Z', 2, "Z"));
    t.push(tr(0, sym(RIGHT_END), 'A', 3, "A"));
    t.push(tr(1, sym('a'), 'Z', 3, "Z"));
    t.push(tr(1, sym('a'), 'A', 3, "A"));
    t.push(tr(1, sym('b'), 'Z', 3, "Z"));
    t.push(tr(1, sym('b'), 'A', 1, ""));
    t.push(tr(1, sym(RIGHT_END), 'Z', 2, "Z"));
    t.push(tr(1, sym(RIGHT_END), 'A', 3, "A"));
    t.push(tr(1, sym(LEFT_END), 'Z', 3, "Z"));
    t.push(tr(1, sym(LEFT_END), 'A', 3, "A"));
    t.push(tr(0, sym(LEFT_END), 'A', 3, "A"));
    Dpda::new(DpdaParts {
        states: vec!["a".into(), "b".into(), "acc".into(), "rej".into()],
        input_alphabet: vec!['a', 'b'],
        stack_alphabet: vec!['Z', 'A'],
        bottom: 'Z',
        initial: 0,
        accept: vec![2],
        reject: vec![3],
        transitions: t,
        push_size: None,
    })
    .expect("anbn machine is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anbn_is_valid_and_decides() {
        let m = anbn();
        assert!(m.validate().is_valid(), "{:?}", m.validate());
        assert!(m.accepts("aabb", None).unwrap());
        assert!(m.accepts("", None).unwrap());
        assert!(!m.accepts("aab", None).unwrap());
        assert!(!m.accepts("abab", None).unwrap());
    }

    #[test]
    fn trace_has_one_move_per_cell() {
        let out = anbn().run("aabb", None).unwrap();
        assert_eq!(out.trace.len(), 6);
        let heights: Vec<usize> = out.trace.iter().map(|m| m.height_after).collect();
        assert_eq!(heights, vec![1, 2, 3, 2, 1, 1]);
    }

    #[test]
    fn reject_is_an_outcome_not_an_error() {
        let out = anbn().run("ba", None).unwrap();
        assert!(!out.accepted);
        assert_eq!(out.consumed, 2);
    }

    #[test]
    fn undefined_transition_is_an_error() {
        let mut p = anbn().parts();
        p.transitions.retain(|t| !(t.from == 0 && t.read == Read::Symbol('b') && t.top == 'A'));
        let m = Dpda::new(p).unwrap();
        assert!(!m.validate().is_valid());
        assert!(matches!(m.run("ab", None), Err(RunError::UndefinedTransition { .. })));
    }

    #[test]
    fn nondeterminism_is_reported() {
        let mut p = anbn().parts();
        p.transitions.push(Transition { from: 0, read: Read::Epsilon, top: 'Z', to: 0, push: vec!['Z'] });
        let m = Dpda::new(p).unwrap();
        let r = m.validate();
        assert!(r.violations.iter().any(|v| matches!(v, Violation::BothEpsilonAndRead { top: 'Z', .. })));
    }

    #[test]
    fn budget_exhaustion_is_distinct() {
        let mut p = anbn().parts();
        // An ε-loop on Z in a fresh state reached from ¢.
        p.states.push("loop".into());
        p.transitions.retain(|t| !(t.from == 0 && t.read == Read::Symbol(LEFT_END) && t.top == 'Z'));
        p.transitions.push(Transition { from: 0, read: Read::Symbol(LEFT_END), top: 'Z', to: 4, push: vec!['Z'] });
        p.transitions.push(Transition { from: 4, read: Read::Epsilon, top: 'Z', to: 4, push: vec!['Z'] });
        p.transitions.push(Transition { from: 4, read: Read::Epsilon, top: 'A', to: 4, push: vec!['A'] });
        let m = Dpda::new(p).unwrap();
        assert_eq!(m.run("ab", Some(100)), Err(RunError::BudgetExhausted { budget: 100 }));
    }

    #[test]
    fn json_round_trip() {
        let m = anbn();
        let back = Dpda::from_json(&m.to_json()).unwrap();
        for w in ["", "ab", "aabb", "aab", "ba"] {
            assert_eq!(m.accepts(w, None).unwrap(), back.accepts(w, None).unwrap());
        }
    }

    #[test]
    fn loader_refuses_invalid_machines() {
        let mut p = anbn().parts();
        p.transitions.pop();
        let text = Dpda::new(p).unwrap().to_json();
        assert!(matches!(Dpda::from_json(&text), Err(LoadError::Invalid(_))));
    }

    #[test]
    fn complement_swaps_verdicts() {
        let m = anbn();
        let c = m.complement();
        for w in ["", "ab", "aabb", "aab", "ba", "abab"] {
            assert_ne!(m.accepts(w, None).unwrap(), c.accepts(w, None).unwrap());
        }
    }
}
