//! The recursive union decomposition of `L_k` / `L′_k` into `2^{k−1}`
//! segment machines.

use crate::automaton::Dpda;

use super::lang::hibbard_order;
use super::segments::{cmp, one, segment_machine, star, Compare, Rel, Segment};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Pair {
    /// `n ≤ m`
    Ab,
    /// `m ≤ p`
    Bc,
    /// `p ≤ m`
    Cb,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Outcome {
    Equal,
    Strict,
}

/// Per-block comparisons of every union member, indexed by logical block − 1.
pub(crate) fn components(k: usize, primed: bool) -> Vec<Vec<(Pair, Outcome)>> {
    use Outcome::*;
    let first = if primed { Pair::Cb } else { Pair::Ab };
    match k {
        0 => panic!("k ≥ 1"),
        1 => vec![vec![(first, Equal)]],
        2 => vec![vec![(first, Equal), (Pair::Ab, Equal)], vec![(first, Strict), (Pair::Bc, Equal)]],
        _ => {
            let mut out = Vec::new();
            for (o1, o2, sub_primed) in [(Equal, Equal, false), (Equal, Strict, true), (Strict, Equal, false), (Strict, Strict, true)] {
                let second = if o1 == Equal { Pair::Ab } else { Pair::Bc };
                for sub in components(k - 2, sub_primed) {
                    let mut c = vec![(first, o1), (second, o2)];
                    c.extend(sub);
                    out.push(c);
                }
            }
            out
        }
    }
}

pub(crate) fn label(c: &[(Pair, Outcome)]) -> String {
    c.iter().map(|(_, o)| if *o == Outcome::Equal { '=' } else { '<' }).collect()
}

/// Segment machine for one member: blocks `a*b*c*` separated by `#` in tape order.
pub(crate) fn component_machine(comp: &[(Pair, Outcome)]) -> Dpda {
    let k = comp.len();
    let mut segs: Vec<Segment> = Vec::new();
    let mut cmps: Vec<Compare> = Vec::new();
    for (t, j) in hibbard_order(k).into_iter().enumerate() {
        if t > 0 {
            segs.push(one('#'));
        }
        let base = segs.len();
        segs.extend([star('a'), star('b'), star('c')]);
        let (a, b, c) = (base, base + 1, base + 2);
        cmps.push(match comp[j - 1] {
            (Pair::Ab, Outcome::Equal) => cmp(a, b, Rel::Eq),
            (Pair::Ab, Outcome::Strict) => cmp(a, b, Rel::Gt),
            (Pair::Bc, Outcome::Equal) | (Pair::Cb, Outcome::Equal) => cmp(b, c, Rel::Eq),
            (Pair::Bc, Outcome::Strict) => cmp(b, c, Rel::Gt),
            (Pair::Cb, Outcome::Strict) => cmp(b, c, Rel::Lt),
        });
    }
    segment_machine(&['a', 'b', 'c', '#'], &segs, &cmps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn member_counts_double() {
        for k in 1..=5 {
            assert_eq!(components(k, false).len(), 1 << (k - 1));
            assert_eq!(components(k, true).len(), 1 << (k - 1));
        }
    }

    #[test]
    fn the_last_block_is_always_equal() {
        for k in 1..=5 {
            for c in components(k, false) {
                assert_eq!(c[k - 1].1, Outcome::Equal);
            }
        }
    }
}
