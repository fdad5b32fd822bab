//! μ-bounded intersections of DPDA families and description sizes.

use std::sync::Arc;

use num_bigint::BigUint;
use serde::Serialize;

use crate::automaton::{Dpda, Read, RunError, LEFT_END, RIGHT_END};
use crate::zoo::build::{accept, explore, reject, Act, Op, BOTTOM};

/// `|Q|·|Σ|·|Γ^{≤e}|` with `e` the push size.
pub fn des(m: &Dpda) -> BigUint {
    let g = BigUint::from(m.stack_alphabet().len());
    let strings: BigUint = (0..=m.push_size() as u32).map(|k| g.pow(k)).sum();
    BigUint::from(m.state_count()) * BigUint::from(m.input_alphabet().len()) * strings
}

#[derive(Clone)]
pub struct DpdaFamily {
    pub name: String,
    pub generator: Arc<dyn Fn(usize) -> Dpda + Send + Sync>,
    pub mu: Arc<dyn Fn(usize) -> usize + Send + Sync>,
    /// Coefficients of the declared size bound, constant term first.
    pub bound: Vec<u64>,
}

impl DpdaFamily {
    pub fn machine(&self, n: usize) -> Dpda {
        (self.generator)(n)
    }

    pub fn declared_bound(&self, n: usize) -> BigUint {
        self.bound.iter().rev().fold(BigUint::from(0u8), |acc, &c| acc * BigUint::from(n) + BigUint::from(c))
    }
}

/// `x` belongs iff every `M_i` with `i ≤ μ(|x|)` accepts it.
pub fn mu_bounded_member(family: &DpdaFamily, x: &str, budget: Option<u64>) -> Result<bool, RunError> {
    let top = (family.mu)(x.chars().count());
    for i in 0..=top {
        if !family.machine(i).accepts(x, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn bit_counter(c: char) -> char {
    if c == '0' {
        'P'
    } else {
        'Q'
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Key {
    Parity(bool),
    /// `k` symbols read, fewer than `n`.
    Count(usize),
    /// The `n`-th symbol, and whether more followed it.
    Got(char, bool),
    /// Popping after `$`; `j` symbols from the end removed so far.
    Pop(char, usize),
}

/// `M_0` accepts even lengths without its stack; `M_n` accepts `x` with
/// `|x| > n` whose `n`-th symbol equals its `n`-th symbol from the end.
pub fn pal_family(n: usize) -> Dpda {
    let delta = move |k: &Key, read: Read, top: char| -> Option<Act<Key>> {
        match (*k, read) {
            (Key::Pop(s, j), Read::Epsilon) if top != BOTTOM => Some(if j + 1 == n {
                Act::Halt(top == bit_counter(s), Op::Pop)
            } else {
                Act::Go(Key::Pop(s, j + 1), Op::Pop)
            }),
            (_, Read::Epsilon) => None,
            (Key::Pop(..), _) => Some(reject()),
            (k, Read::Symbol(LEFT_END)) => Some(Act::Go(k, Op::Keep)),
            (Key::Parity(odd), Read::Symbol(RIGHT_END)) => Some(if odd { reject() } else { accept() }),
            (Key::Parity(odd), Read::Symbol(_)) => Some(Act::Go(Key::Parity(!odd), Op::Keep)),
            (Key::Got(s, true), Read::Symbol(RIGHT_END)) if top != BOTTOM => Some(if n == 1 {
                Act::Halt(top == bit_counter(s), Op::Pop)
            } else {
                Act::Go(Key::Pop(s, 1), Op::Pop)
            }),
            (_, Read::Symbol(RIGHT_END)) => Some(reject()),
            (Key::Count(i), Read::Symbol(c)) => {
                let next = if i + 1 == n { Key::Got(c, false) } else { Key::Count(i + 1) };
                Some(Act::Go(next, Op::Push(bit_counter(c))))
            }
            (Key::Got(s, _), Read::Symbol(c)) => Some(Act::Go(Key::Got(s, true), Op::Push(bit_counter(c)))),
        }
    };
    if n == 0 {
        explore(&['0', '1'], &[], Key::Parity(false), delta)
    } else {
        explore(&['0', '1'], &['P', 'Q'], Key::Count(0), delta)
    }
}

/// The Pal family with `μ(n) = ⌈n/2⌉` and declared bound `n² + 100n + 200`.
pub fn pal_dpda_family() -> DpdaFamily {
    DpdaFamily {
        name: "pal".into(),
        generator: Arc::new(pal_family),
        mu: Arc::new(|len| len.div_ceil(2)),
        bound: vec![200, 100, 1],
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SizeRow {
    pub n: usize,
    pub states: usize,
    pub des: String,
    pub bound: String,
    pub within: bool,
}

pub fn size_table(family: &DpdaFamily, n_max: usize) -> Vec<SizeRow> {
    (0..=n_max)
        .map(|n| {
            let m = family.machine(n);
            let (d, b) = (des(&m), family.declared_bound(n));
            SizeRow { n, states: m.state_count(), des: d.to_string(), bound: b.to_string(), within: d <= b }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{DpdaParts, Transition};
    use crate::normal_forms::check_ideal_shape;

    fn toy(states: usize, sigma: usize, gamma: usize, e: usize) -> Dpda {
        let input: Vec<char> = "xyzw".chars().take(sigma).collect();
        let stack: Vec<char> = "ZABC".chars().take(gamma).collect();
        let mut transitions = Vec::new();
        for &top in &stack {
            for &c in input.iter().chain(&[LEFT_END, RIGHT_END]) {
                transitions.push(Transition { from: 0, read: Read::Symbol(c), top, to: states - 1, push: vec![top] });
            }
        }
        let mut names: Vec<String> = (0..states).map(|i| format!("q{i}")).collect();
        names[states - 1] = "acc".into();
        Dpda::new(DpdaParts {
            states: names,
            input_alphabet: input,
            stack_alphabet: stack,
            bottom: 'Z',
            initial: 0,
            accept: vec![states - 1],
            reject: vec![],
            transitions,
            push_size: Some(e),
        })
        .unwrap()
    }

    #[test]
    fn des_formula() {
        assert_eq!(des(&toy(2, 2, 2, 1)), BigUint::from(12u8));
        assert_eq!(des(&toy(3, 2, 2, 0)), BigUint::from(6u8));
        assert!(des(&toy(3, 2, 2, 1)) > des(&toy(2, 2, 2, 1)));
        assert!(des(&toy(2, 3, 2, 1)) > des(&toy(2, 2, 2, 1)));
        assert!(des(&toy(2, 2, 3, 1)) > des(&toy(2, 2, 2, 1)));
        assert!(des(&toy(2, 2, 2, 2)) > des(&toy(2, 2, 2, 1)));
    }

    #[test]
    fn family_examples() {
        let f = pal_dpda_family();
        assert!(mu_bounded_member(&f, "0110", None).unwrap());
        assert!(!mu_bounded_member(&f, "01", None).unwrap());
        assert!(mu_bounded_member(&f, "", None).unwrap());
        assert!(pal_family(1).accepts("00", None).unwrap());
        assert!(pal_family(2).accepts("0110", None).unwrap());
        assert!(!pal_family(1).accepts("01", None).unwrap());
        assert!(!pal_family(3).accepts("010", None).unwrap());
    }

    #[test]
    fn machines_are_valid_and_ideal() {
        for n in 0..8 {
            let m = pal_family(n);
            assert!(m.validate().is_valid(), "{n}: {:?}", m.validate());
            assert!(check_ideal_shape(&m).is_ideal(), "{n}");
        }
    }

    #[test]
    fn each_machine_checks_one_position() {
        for n in 1..5 {
            let m = pal_family(n);
            for w in crate::strings::all_strings(&['0', '1'], 8) {
                let c: Vec<char> = w.chars().collect();
                let want = c.len() > n && c[n - 1] == c[c.len() - n];
                assert_eq!(m.accepts(&w, None).unwrap(), want, "M_{n} {w}");
            }
        }
    }

    #[test]
    fn sizes_stay_under_the_bound() {
        let rows = size_table(&pal_dpda_family(), 32);
        assert!(rows.iter().all(|r| r.within));
        assert_eq!(rows[5].states, 3 * 5 + 4);
    }
}
