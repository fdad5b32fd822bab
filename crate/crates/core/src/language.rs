//! Boolean combinations of DPDAs, DFAs and predicates.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::automaton::{Dpda, DpdaParts, Read, RunError, Transition, LEFT_END, RIGHT_END};
use crate::dfa::Dfa;

pub type Predicate = Arc<dyn Fn(&str) -> bool + Send + Sync>;

#[derive(Clone)]
pub enum Node {
    Dpda { name: String, machine: Arc<Dpda> },
    Dfa { name: String, dfa: Arc<Dfa> },
    Predicate { name: String, test: Predicate },
    Union(Vec<Node>),
    Intersection(Vec<Node>),
    Complement(Box<Node>),
}

impl fmt::Debug for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Dpda { name, .. } => write!(f, "Dpda({name})"),
            Node::Dfa { name, .. } => write!(f, "Dfa({name})"),
            Node::Predicate { name, .. } => write!(f, "Predicate({name})"),
            Node::Union(v) => f.debug_tuple("Union").field(v).finish(),
            Node::Intersection(v) => f.debug_tuple("Intersection").field(v).finish(),
            Node::Complement(n) => f.debug_tuple("Complement").field(n).finish(),
        }
    }
}

impl Node {
    pub fn dpda(name: impl Into<String>, machine: Dpda) -> Node {
        Node::Dpda { name: name.into(), machine: Arc::new(machine) }
    }
    pub fn dfa(name: impl Into<String>, dfa: Dfa) -> Node {
        Node::Dfa { name: name.into(), dfa: Arc::new(dfa) }
    }
    pub fn predicate(name: impl Into<String>, test: impl Fn(&str) -> bool + Send + Sync + 'static) -> Node {
        Node::Predicate { name: name.into(), test: Arc::new(test) }
    }
    pub fn complement(node: Node) -> Node {
        Node::Complement(Box::new(node))
    }

    fn member(&self, input: &str, budget: Option<u64>) -> Result<bool, RunError> {
        Ok(match self {
            Node::Dpda { machine, .. } => machine.accepts(input, budget)?,
            Node::Dfa { dfa, .. } => dfa.accepts(input)?,
            Node::Predicate { test, .. } => test(input),
            Node::Union(v) => {
                for n in v {
                    if n.member(input, budget)? {
                        return Ok(true);
                    }
                }
                false
            }
            Node::Intersection(v) => {
                for n in v {
                    if !n.member(input, budget)? {
                        return Ok(false);
                    }
                }
                true
            }
            Node::Complement(n) => !n.member(input, budget)?,
        })
    }

    fn alphabets(&self, out: &mut Vec<BTreeSet<char>>) {
        match self {
            Node::Dpda { machine, .. } => out.push(machine.input_alphabet().iter().copied().collect()),
            Node::Dfa { dfa, .. } => out.push(dfa.alphabet().iter().copied().collect()),
            Node::Predicate { .. } => {}
            Node::Union(v) | Node::Intersection(v) => v.iter().for_each(|n| n.alphabets(out)),
            Node::Complement(n) => n.alphabets(out),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Composition {
    Union,
    Intersection,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Arity {
    pub composition: Composition,
    pub components: usize,
}

impl fmt::Display for Arity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.composition {
            Composition::Union => "union",
            Composition::Intersection => "intersection",
        };
        write!(f, "{}-{kind}", self.components)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RestrictMode {
    Intersect,
    Union,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("leaf alphabets disagree")]
    AlphabetMismatch,
    #[error("operation needs a pure union or intersection of DPDA leaves")]
    ArityUnknown,
    #[error("restriction needs every DPDA to halt only on the right endmarker; {0}")]
    EarlyHalt(String),
}

/// A language over a fixed alphabet described by a tree of leaves and Boolean nodes.
#[derive(Clone, Debug)]
pub struct LanguageSpec {
    alphabet: Vec<char>,
    root: Node,
}

impl LanguageSpec {
    /// The alphabet is taken from the leaves when they carry one.
    pub fn new(alphabet: &[char], root: Node) -> Result<LanguageSpec, SpecError> {
        let mut sets = Vec::new();
        root.alphabets(&mut sets);
        let want: BTreeSet<char> = alphabet.iter().copied().collect();
        if sets.iter().any(|s| *s != want) {
            return Err(SpecError::AlphabetMismatch);
        }
        Ok(LanguageSpec { alphabet: alphabet.to_vec(), root })
    }

    pub fn single(name: &str, machine: Dpda) -> LanguageSpec {
        let alphabet = machine.input_alphabet().to_vec();
        LanguageSpec { alphabet, root: Node::dpda(name, machine) }
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }
    pub fn root(&self) -> &Node {
        &self.root
    }

    pub fn member(&self, input: &str, budget: Option<u64>) -> Result<bool, RunError> {
        if let Some(c) = input.chars().find(|c| !self.alphabet.contains(c)) {
            return Err(RunError::InvalidSymbol(c));
        }
        self.root.member(input, budget)
    }

    /// Composition and component count when the tree is a flat union or
    /// intersection of DPDA leaves (a lone DPDA counts as a 1-union).
    pub fn arity(&self) -> Option<Arity> {
        match &self.root {
            Node::Dpda { .. } => Some(Arity { composition: Composition::Union, components: 1 }),
            Node::Union(v) if v.iter().all(|n| matches!(n, Node::Dpda { .. })) => {
                Some(Arity { composition: Composition::Union, components: v.len() })
            }
            Node::Intersection(v) if v.iter().all(|n| matches!(n, Node::Dpda { .. })) => {
                Some(Arity { composition: Composition::Intersection, components: v.len() })
            }
            _ => None,
        }
    }

    /// The DPDA leaves of a spec with known arity, in order.
    pub fn components(&self) -> Vec<(&str, &Dpda)> {
        fn leaf(n: &Node) -> Option<(&str, &Dpda)> {
            match n {
                Node::Dpda { name, machine } => Some((name.as_str(), machine.as_ref())),
                _ => None,
            }
        }
        match &self.root {
            Node::Union(v) | Node::Intersection(v) => v.iter().filter_map(leaf).collect(),
            n => leaf(n).into_iter().collect(),
        }
    }

    /// Complement that keeps the arity: De Morgan over the DPDA leaves when
    /// possible, a complement node otherwise.
    pub fn complement(&self) -> LanguageSpec {
        let flip = |v: &[Node]| {
            v.iter()
                .map(|n| match n {
                    Node::Dpda { name, machine } => Node::dpda(format!("co-{name}"), machine.complement()),
                    _ => unreachable!(),
                })
                .collect::<Vec<_>>()
        };
        let root = match (&self.root, self.arity()) {
            (Node::Dpda { name, machine }, _) => Node::dpda(format!("co-{name}"), machine.complement()),
            (Node::Union(v), Some(_)) => Node::Intersection(flip(v)),
            (Node::Intersection(v), Some(_)) => Node::Union(flip(v)),
            (n, _) => Node::complement(n.clone()),
        };
        LanguageSpec { alphabet: self.alphabet.clone(), root }
    }
}

/// Pushes `dfa` into every DPDA leaf so that the result has the same arity
/// and denotes `L ∩ A` (`Intersect`) or `L ∪ A` (`Union`).
pub fn restrict_regular(spec: &LanguageSpec, dfa: &Dfa, mode: RestrictMode) -> Result<LanguageSpec, SpecError> {
    spec.arity().ok_or(SpecError::ArityUnknown)?;
    let a: BTreeSet<char> = dfa.alphabet().iter().copied().collect();
    if a != spec.alphabet.iter().copied().collect() {
        return Err(SpecError::AlphabetMismatch);
    }
    let lift = |n: &Node| -> Result<Node, SpecError> {
        match n {
            Node::Dpda { name, machine } => Ok(Node::dpda(name.clone(), product(machine, dfa, mode)?)),
            _ => Err(SpecError::ArityUnknown),
        }
    };
    let root = match &spec.root {
        Node::Union(v) => Node::Union(v.iter().map(lift).collect::<Result<_, _>>()?),
        Node::Intersection(v) => Node::Intersection(v.iter().map(lift).collect::<Result<_, _>>()?),
        n => lift(n)?,
    };
    Ok(LanguageSpec { alphabet: spec.alphabet.clone(), root })
}

/// Product of a DPDA with a complete DFA. The DFA advances on every input
/// symbol; once the DPDA halts early the product keeps reading with the DFA
/// alone until `$`, unless the verdict is already decided.
pub fn product(m: &Dpda, a: &Dfa, mode: RestrictMode) -> Result<Dpda, SpecError> {
    let ns = a.state_count();
    let live: Vec<usize> = (0..m.state_count()).filter(|&q| !m.is_halting(q)).collect();
    let mut slot = vec![usize::MAX; m.state_count()];
    for (i, &q) in live.iter().enumerate() {
        slot[q] = i;
    }
    let nq = live.len();
    let run = |q: usize, s: usize| slot[q] * ns + s;
    let tail = |v: bool, s: usize| nq * ns + (v as usize) * ns + s;
    let acc = nq * ns + 2 * ns;
    let rej = acc + 1;
    let mut states = Vec::with_capacity(rej + 1);
    for &q in &live {
        for s in 0..ns {
            states.push(format!("{}|{s}", m.state_name(q)));
        }
    }
    for v in ["rej", "acc"] {
        for s in 0..ns {
            states.push(format!("tail-{v}|{s}"));
        }
    }
    states.push("acc".into());
    states.push("rej".into());
    let combine = |v: bool, d: bool| match mode {
        RestrictMode::Intersect => v && d,
        RestrictMode::Union => v || d,
    };
    let decided = |v: bool| match mode {
        RestrictMode::Intersect => (!v).then_some(false),
        RestrictMode::Union => v.then_some(true),
    };
    let verdict_state = |b: bool| if b { acc } else { rej };
    let mut transitions = Vec::new();
    for t in m.transitions() {
        if m.is_halting(t.from) {
            continue;
        }
        for s in 0..ns {
            let s2 = match t.read {
                Read::Symbol(c) if c != LEFT_END && c != RIGHT_END => a.step(s, c).expect("alphabets agree"),
                _ => s,
            };
            let to = if !m.is_halting(t.to) {
                run(t.to, s2)
            } else {
                let v = m.is_accepting(t.to);
                if t.read == Read::Symbol(RIGHT_END) {
                    verdict_state(combine(v, a.is_accepting(s2)))
                } else if let Some(b) = decided(v) {
                    verdict_state(b)
                } else if t.read.is_epsilon() {
                    return Err(SpecError::EarlyHalt(format!("state {} halts by an ε-move", m.state_name(t.from))));
                } else {
                    tail(v, s2)
                }
            };
            transitions.push(Transition { from: run(t.from, s), read: t.read, top: t.top, to, push: t.push.clone() });
        }
    }
    for v in [false, true] {
        for s in 0..ns {
            for &top in m.stack_alphabet() {
                transitions.push(Transition {
                    from: tail(v, s),
                    read: Read::Symbol(LEFT_END),
                    top,
                    to: tail(v, s),
                    push: vec![top],
                });
                transitions.push(Transition {
                    from: tail(v, s),
                    read: Read::Symbol(RIGHT_END),
                    top,
                    to: verdict_state(combine(v, a.is_accepting(s))),
                    push: vec![top],
                });
                for &c in a.alphabet() {
                    transitions.push(Transition {
                        from: tail(v, s),
                        read: Read::Symbol(c),
                        top,
                        to: tail(v, a.step(s, c).unwrap()),
                        push: vec![top],
                    });
                }
            }
        }
    }
    Ok(Dpda::new(DpdaParts {
        states,
        input_alphabet: m.input_alphabet().to_vec(),
        stack_alphabet: m.stack_alphabet().to_vec(),
        bottom: m.bottom(),
        initial: run(m.initial(), a.start()),
        accept: vec![acc],
        reject: vec![rej],
        transitions,
        push_size: Some(m.push_size()),
    })
    .expect("product of well-formed machines is well formed"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::anbn;

    fn spec() -> LanguageSpec {
        LanguageSpec::single("anbn", anbn())
    }

    #[test]
    fn arity_of_single_machine() {
        let a = spec().arity().unwrap();
        assert_eq!(a.components, 1);
    }

    #[test]
    fn arity_unknown_for_mixed_trees() {
        let s = LanguageSpec::new(
            &['a', 'b'],
            Node::Union(vec![Node::dpda("m", anbn()), Node::predicate("p", |w| w.is_empty())]),
        )
        .unwrap();
        assert_eq!(s.arity(), None);
        let u = Dfa::universal(&['a', 'b']);
        assert_eq!(restrict_regular(&s, &u, RestrictMode::Intersect).unwrap_err(), SpecError::ArityUnknown);
    }

    #[test]
    fn restrict_with_universal_and_empty_is_identity() {
        let s = spec();
        let i = restrict_regular(&s, &Dfa::universal(&['a', 'b']), RestrictMode::Intersect).unwrap();
        let u = restrict_regular(&s, &Dfa::empty(&['a', 'b']), RestrictMode::Union).unwrap();
        for w in crate::strings::all_strings(&['a', 'b'], 8) {
            let want = s.member(&w, None).unwrap();
            assert_eq!(i.member(&w, None).unwrap(), want, "{w}");
            assert_eq!(u.member(&w, None).unwrap(), want, "{w}");
        }
    }

    #[test]
    fn restrict_to_even_length() {
        let even = Dfa::from_fn(&['a', 'b'], 2, 0, &[0], |s, _| 1 - s);
        let s = spec();
        let i = restrict_regular(&s, &even, RestrictMode::Intersect).unwrap();
        let u = restrict_regular(&s, &even, RestrictMode::Union).unwrap();
        for w in crate::strings::all_strings(&['a', 'b'], 8) {
            let m = s.member(&w, None).unwrap();
            let e = w.len() % 2 == 0;
            assert_eq!(i.member(&w, None).unwrap(), m && e, "{w}");
            assert_eq!(u.member(&w, None).unwrap(), m || e, "{w}");
            assert!(i.components()[0].1.validate().is_valid());
        }
    }

    #[test]
    fn complement_keeps_arity() {
        let s = LanguageSpec::new(
            &['a', 'b'],
            Node::Intersection(vec![Node::dpda("x", anbn()), Node::dpda("y", anbn())]),
        )
        .unwrap();
        let c = s.complement();
        assert_eq!(c.arity().unwrap().composition, Composition::Union);
        for w in crate::strings::all_strings(&['a', 'b'], 6) {
            assert_ne!(s.member(&w, None).unwrap(), c.member(&w, None).unwrap());
        }
    }
}
