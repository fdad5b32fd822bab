//! Total DPDAs in ideal shape from a transition function over abstract keys.

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use crate::automaton::{Dpda, DpdaParts, Read, Transition, LEFT_END, RIGHT_END};

pub(crate) const BOTTOM: char = 'Z';

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Op {
    Keep,
    Push(char),
    Pop,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Act<K> {
    Go(K, Op),
    Halt(bool, Op),
}

pub(crate) fn accept<K>() -> Act<K> {
    Act::Halt(true, Op::Keep)
}

pub(crate) fn reject<K>() -> Act<K> {
    Act::Halt(false, Op::Keep)
}

/// Explores every key reachable from `start`. For each key and stack top the
/// function is asked for an ε-move first (which must pop); otherwise for a
/// move on every tape symbol, where `None` means reject.
pub(crate) fn explore<K: Clone + Eq + Hash + Debug>(
    input: &[char],
    counters: &[char],
    start: K,
    delta: impl Fn(&K, Read, char) -> Option<Act<K>>,
) -> Dpda {
    let mut stack = vec![BOTTOM];
    stack.extend_from_slice(counters);
    let mut symbols = vec![LEFT_END, RIGHT_END];
    symbols.extend_from_slice(input);
    let mut index: HashMap<K, usize> = HashMap::new();
    let mut keys = vec![start.clone()];
    index.insert(start, 0);
    // Halting states get fixed indices once exploration is over.
    let mut pending: Vec<(usize, Read, char, Act<K>)> = Vec::new();
    let mut i = 0;
    while i < keys.len() {
        let k = keys[i].clone();
        for &top in &stack {
            let mut acts = Vec::new();
            match delta(&k, Read::Epsilon, top) {
                Some(a) => {
                    let pops = matches!(a, Act::Go(_, Op::Pop) | Act::Halt(_, Op::Pop));
                    assert!(pops, "ε-moves must pop ({k:?}, {top})");
                    acts.push((Read::Epsilon, a));
                }
                None => {
                    for &c in &symbols {
                        acts.push((Read::Symbol(c), delta(&k, Read::Symbol(c), top).unwrap_or_else(reject)));
                    }
                }
            }
            for (r, a) in acts {
                if let Act::Go(k2, _) = &a {
                    if !index.contains_key(k2) {
                        index.insert(k2.clone(), keys.len());
                        keys.push(k2.clone());
                    }
                }
                pending.push((i, r, top, a));
            }
        }
        i += 1;
    }
    let acc = keys.len();
    let rej = acc + 1;
    let mut states: Vec<String> = keys.iter().map(|k| format!("{k:?}")).collect();
    states.push("acc".into());
    states.push("rej".into());
    let transitions = pending
        .into_iter()
        .map(|(from, read, top, a)| {
            let (to, op) = match a {
                Act::Go(k, op) => (index[&k], op),
                Act::Halt(v, op) => (if v { acc } else { rej }, op),
            };
            let push = match op {
                Op::Keep => vec![top],
                Op::Push(x) => vec![x, top],
                Op::Pop => {
                    assert_ne!(top, BOTTOM, "the bottom marker is never popped");
                    Vec::new()
                }
            };
            Transition { from, read, top, to, push }
        })
        .collect();
    Dpda::new(DpdaParts {
        states,
        input_alphabet: input.to_vec(),
        stack_alphabet: stack,
        bottom: BOTTOM,
        initial: 0,
        accept: vec![acc],
        reject: vec![rej],
        transitions,
        push_size: Some(2),
    })
    .expect("explored machine is well formed")
}
