//! Complete deterministic finite automata over a fixed alphabet.

use std::collections::HashMap;

use crate::automaton::RunError;

#[derive(Clone, Debug)]
pub struct Dfa {
    alphabet: Vec<char>,
    index: HashMap<char, usize>,
    delta: Vec<usize>,
    start: usize,
    accepting: Vec<bool>,
}

impl Dfa {
    /// Builds a complete DFA with states `0..states` from a total transition function.
    pub fn from_fn(
        alphabet: &[char],
        states: usize,
        start: usize,
        accepting: &[usize],
        delta: impl Fn(usize, char) -> usize,
    ) -> Dfa {
        assert!(start < states, "start state out of range");
        let mut table = Vec::with_capacity(states * alphabet.len());
        for s in 0..states {
            for &c in alphabet {
                let t = delta(s, c);
                assert!(t < states, "transition target out of range");
                table.push(t);
            }
        }
        let mut acc = vec![false; states];
        for &s in accepting {
            acc[s] = true;
        }
        Dfa {
            alphabet: alphabet.to_vec(),
            index: alphabet.iter().enumerate().map(|(i, &c)| (c, i)).collect(),
            delta: table,
            start,
            accepting: acc,
        }
    }

    pub fn universal(alphabet: &[char]) -> Dfa {
        Dfa::from_fn(alphabet, 1, 0, &[0], |_, _| 0)
    }

    pub fn empty(alphabet: &[char]) -> Dfa {
        Dfa::from_fn(alphabet, 1, 0, &[], |_, _| 0)
    }

    /// Strings matching `c1* c2* … ck*` for distinct letters.
    pub fn star_sequence(alphabet: &[char], letters: &[char]) -> Dfa {
        let k = letters.len();
        let dead = k;
        Dfa::from_fn(alphabet, k + 1, 0, &(0..k.max(1)).collect::<Vec<_>>(), |s, c| {
            if s == dead {
                return dead;
            }
            match letters[s..].iter().position(|&l| l == c) {
                Some(off) => s + off,
                None => dead,
            }
        })
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }
    pub fn state_count(&self) -> usize {
        self.accepting.len()
    }
    pub fn start(&self) -> usize {
        self.start
    }
    pub fn is_accepting(&self, s: usize) -> bool {
        self.accepting[s]
    }

    pub fn step(&self, s: usize, c: char) -> Option<usize> {
        self.index.get(&c).map(|&i| self.delta[s * self.alphabet.len() + i])
    }

    pub fn accepts(&self, input: &str) -> Result<bool, RunError> {
        let mut s = self.start;
        for c in input.chars() {
            s = self.step(s, c).ok_or(RunError::InvalidSymbol(c))?;
        }
        Ok(self.accepting[s])
    }

    pub fn complement(&self) -> Dfa {
        let mut out = self.clone();
        for a in &mut out.accepting {
            *a = !*a;
        }
        out
    }
}
