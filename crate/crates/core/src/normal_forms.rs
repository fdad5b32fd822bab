//! Ideal-shape checking, ε-enhancement and induced inputs.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::automaton::{Dpda, DpdaParts, Read, RunError, Transition, LEFT_END, PLACEHOLDER, RIGHT_END};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MoveKind {
    Stationary,
    PushOne,
    PopOnRead,
    PopOnEpsilon,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ShapeViolation {
    /// A reading move that is none of stationary, push-one or pop.
    IrregularRead { transition: usize },
    /// An ε-move that does not pop.
    EpsilonNonPop { transition: usize },
    /// A state with ε-moves that is initial.
    EpsilonStateInitial { state: String },
    /// A state with ε-moves entered by something other than a pop.
    EpsilonStateEnteredWithoutPop { state: String, transition: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShapeReport {
    pub kinds: Vec<Option<MoveKind>>,
    pub violations: Vec<ShapeViolation>,
}

impl ShapeReport {
    pub fn is_ideal(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn classify_move(m: &Dpda, t: &Transition) -> Option<MoveKind> {
    match t.read {
        Read::Epsilon => t.push.is_empty().then_some(MoveKind::PopOnEpsilon),
        Read::Symbol(_) => {
            if t.push.is_empty() {
                Some(MoveKind::PopOnRead)
            } else if t.push == [t.top] {
                Some(MoveKind::Stationary)
            } else if t.push.len() == 2 && t.push[1] == t.top && t.push[0] != m.bottom() {
                Some(MoveKind::PushOne)
            } else {
                None
            }
        }
    }
}

pub fn check_ideal_shape(m: &Dpda) -> ShapeReport {
    let mut violations = Vec::new();
    let kinds: Vec<Option<MoveKind>> = m.transitions().iter().map(|t| classify_move(m, t)).collect();
    for (i, (t, k)) in m.transitions().iter().zip(&kinds).enumerate() {
        if k.is_none() {
            violations.push(if t.read.is_epsilon() {
                ShapeViolation::EpsilonNonPop { transition: i }
            } else {
                ShapeViolation::IrregularRead { transition: i }
            });
        }
    }
    let mut has_eps = vec![false; m.state_count()];
    for t in m.transitions() {
        if t.read.is_epsilon() {
            has_eps[t.from] = true;
        }
    }
    if has_eps[m.initial()] {
        violations.push(ShapeViolation::EpsilonStateInitial { state: m.state_name(m.initial()).into() });
    }
    for (i, (t, k)) in m.transitions().iter().zip(&kinds).enumerate() {
        let pop = matches!(k, Some(MoveKind::PopOnRead | MoveKind::PopOnEpsilon));
        if has_eps[t.to] && !pop {
            violations.push(ShapeViolation::EpsilonStateEnteredWithoutPop {
                state: m.state_name(t.to).into(),
                transition: i,
            });
        }
    }
    ShapeReport { kinds, violations }
}

/// Real-time machine over `Σ ∪ {·}` that reads a placeholder wherever `m`
/// would make an ε-move. Mismatched symbols lead to a fresh rejecting state.
pub fn epsilon_enhance(m: &Dpda) -> Result<Dpda, InduceError> {
    if m.input_alphabet().contains(&PLACEHOLDER) {
        return Err(InduceError::PlaceholderInAlphabet);
    }
    let mut parts: DpdaParts = m.parts();
    let mut name = String::from("mismatch");
    while parts.states.contains(&name) {
        name.push('\'');
    }
    let sink = parts.states.len();
    parts.states.push(name);
    parts.reject.push(sink);
    parts.input_alphabet.push(PLACEHOLDER);
    let mut symbols = vec![LEFT_END, RIGHT_END];
    symbols.extend(m.input_alphabet().iter().copied());
    let mut transitions = Vec::new();
    for p in 0..m.state_count() {
        if m.is_halting(p) {
            continue;
        }
        for &a in m.stack_alphabet() {
            let to_sink = |read| Transition { from: p, read, top: a, to: sink, push: vec![a] };
            if let Some(t) = m.transition(p, Read::Epsilon, a) {
                transitions.push(Transition { read: Read::Symbol(PLACEHOLDER), ..t.clone() });
                for &c in &symbols {
                    transitions.push(to_sink(Read::Symbol(c)));
                }
            } else {
                for &c in &symbols {
                    if let Some(t) = m.transition(p, Read::Symbol(c), a) {
                        transitions.push(t.clone());
                    }
                }
                transitions.push(to_sink(Read::Symbol(PLACEHOLDER)));
            }
        }
    }
    parts.transitions = transitions;
    Ok(Dpda::new(parts).expect("enhancement of a well-formed machine is well formed"))
}

/// An input over `Σ ∪ {·}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct EnhancedString {
    pub symbols: Vec<char>,
}

impl EnhancedString {
    pub fn new(symbols: Vec<char>) -> Self {
        EnhancedString { symbols }
    }
    pub fn len(&self) -> usize {
        self.symbols.len()
    }
    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
    /// The plain input with placeholders removed.
    pub fn strip(&self) -> String {
        self.symbols.iter().filter(|&&c| c != PLACEHOLDER).collect()
    }
    pub fn as_string(&self) -> String {
        self.symbols.iter().collect()
    }
}

impl fmt::Display for EnhancedString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.as_string())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InduceError {
    #[error(transparent)]
    Run(#[from] RunError),
    #[error("the placeholder symbol is already in the input alphabet")]
    PlaceholderInAlphabet,
    #[error("ε-move before the left endmarker cannot be placed in the input")]
    EpsilonBeforeLeftEnd,
    #[error("ε-move after the right endmarker cannot be placed in the input")]
    EpsilonAfterRightEnd,
}

/// The string `x̂` with one placeholder per ε-move of `m` on `x`. Input left
/// unread after an early halt is appended unchanged.
pub fn induce(m: &Dpda, x: &str) -> Result<EnhancedString, InduceError> {
    let chars: Vec<char> = x.chars().collect();
    let out = m.run_chars(&chars, None, true)?;
    let mut symbols = Vec::with_capacity(chars.len() + out.trace.len());
    for mv in &out.trace {
        match mv.read {
            Read::Epsilon if mv.position == 0 => return Err(InduceError::EpsilonBeforeLeftEnd),
            Read::Epsilon if mv.position > chars.len() + 1 => return Err(InduceError::EpsilonAfterRightEnd),
            Read::Epsilon => symbols.push(PLACEHOLDER),
            Read::Symbol(LEFT_END) | Read::Symbol(RIGHT_END) => {}
            Read::Symbol(c) => symbols.push(c),
        }
    }
    let read_plain = out.consumed.saturating_sub(1).min(chars.len());
    symbols.extend_from_slice(&chars[read_plain..]);
    Ok(EnhancedString { symbols })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::automaton::anbn;

    /// {a²ⁿbⁿ}: each b pops one A on read and a second one by an ε-move.
    pub(crate) fn a2nbn() -> Dpda {
        let tr = |from, read, top, to, push: &str| Transition { from, read, top, to, push: push.chars().collect() };
        let s = Read::Symbol;
        // 0 = a-phase, 1 = drop, 2 = b-phase, 3 = acc, 4 = rej
        let mut t = vec![
            tr(0, s(LEFT_END), 'Z', 0, "Z"),
            tr(0, s('a'), 'Z', 0, "AZ"),
            tr(0, s('a'), 'A', 0, "AA"),
            tr(0, s('b'), 'A', 1, ""),
            tr(0, s(RIGHT_END), 'Z', 3, "Z"),
            tr(1, Read::Epsilon, 'A', 2, ""),
            tr(2, s('b'), 'A', 1, ""),
            tr(2, s(RIGHT_END), 'Z', 3, "Z"),
        ];
        let filled: Vec<(usize, Read, char)> = t.iter().map(|t| (t.from, t.read, t.top)).collect();
        for p in 0..3 {
            for a in ['Z', 'A'] {
                if p == 1 && a == 'A' {
                    continue;
                }
                for c in [LEFT_END, RIGHT_END, 'a', 'b'] {
                    if !filled.contains(&(p, s(c), a)) {
                        t.push(tr(p, s(c), a, 4, &a.to_string()));
                    }
                }
            }
        }
        Dpda::new(DpdaParts {
            states: ["a", "drop", "b", "acc", "rej"].map(String::from).to_vec(),
            input_alphabet: vec!['a', 'b'],
            stack_alphabet: vec!['Z', 'A'],
            bottom: 'Z',
            initial: 0,
            accept: vec![3],
            reject: vec![4],
            transitions: t,
            push_size: None,
        })
        .unwrap()
    }

    #[test]
    fn eps_machine_is_valid_ideal() {
        let m = a2nbn();
        assert!(m.validate().is_valid(), "{:?}", m.validate());
        assert!(check_ideal_shape(&m).is_ideal(), "{:?}", check_ideal_shape(&m));
        for (w, ok) in [("", true), ("aab", true), ("aaaabb", true), ("ab", false), ("aabb", false), ("aaab", false)] {
            assert_eq!(m.accepts(w, None).unwrap(), ok, "{w}");
        }
    }

    #[test]
    fn anbn_is_ideal() {
        assert!(check_ideal_shape(&anbn()).is_ideal());
    }

    #[test]
    fn eps_push_is_a_violation() {
        let mut p = a2nbn().parts();
        let i = p.transitions.iter().position(|t| t.read == Read::Epsilon).unwrap();
        p.transitions[i].push = vec!['A'];
        let r = check_ideal_shape(&Dpda::new(p).unwrap());
        assert!(r.violations.contains(&ShapeViolation::EpsilonNonPop { transition: i }));
    }

    #[test]
    fn eps_state_entered_by_push_is_a_violation() {
        let mut p = a2nbn().parts();
        let i = p.transitions.iter().position(|t| t.from == 0 && t.read == Read::Symbol('a') && t.top == 'Z').unwrap();
        p.transitions[i].to = 1;
        let r = check_ideal_shape(&Dpda::new(p).unwrap());
        assert!(r.violations.iter().any(|v| matches!(v, ShapeViolation::EpsilonStateEnteredWithoutPop { .. })));
    }

    #[test]
    fn induce_places_one_placeholder_per_eps_move() {
        let m = a2nbn();
        let x = induce(&m, "aaaabb").unwrap();
        assert_eq!(x.as_string(), "aaaab·b·");
        assert_eq!(x.strip(), "aaaabb");
        let n = epsilon_enhance(&m).unwrap();
        assert!(n.validate().is_valid(), "{:?}", n.validate());
        assert!(n.accepts(&x.as_string(), None).unwrap());
        let out = n.run(&x.as_string(), None).unwrap();
        assert!(out.trace.iter().all(|mv| !mv.read.is_epsilon()));
        assert_eq!(out.trace.len(), x.len() + 2);
    }

    #[test]
    fn enhancement_rejects_misplaced_placeholders() {
        let n = epsilon_enhance(&a2nbn()).unwrap();
        assert!(!n.accepts("aab", None).unwrap());
        assert!(!n.accepts("a·ab", None).unwrap());
        assert!(n.accepts("aab·", None).unwrap());
    }

    #[test]
    fn enhancement_of_real_time_machine_is_identity_on_plain_inputs() {
        let m = anbn();
        let n = epsilon_enhance(&m).unwrap();
        for w in crate::strings::all_strings(&['a', 'b'], 8) {
            let x = induce(&m, &w).unwrap();
            assert_eq!(x.as_string(), w);
            assert_eq!(n.accepts(&w, None).unwrap(), m.accepts(&w, None).unwrap());
        }
    }

    #[test]
    fn early_halt_keeps_unread_suffix() {
        let x = induce(&anbn(), "abab").unwrap();
        assert_eq!(x.as_string(), "abab");
    }
}
