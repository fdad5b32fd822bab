//! Machines for languages of the form `l₁^{e₁} l₂^{e₂} … lᵣ^{eᵣ}` with
//! comparisons `e_dst REL k·e_src` between pairs of segments.
//!
//! The control state is the current segment index: segments before it are
//! complete and the current one may have absorbed letters already. The
//! source of a comparison pushes one counter per letter; the destination
//! pops one counter per `k` letters.

use crate::automaton::{Dpda, Read, LEFT_END, RIGHT_END};

use super::build::{accept, explore, reject, Act, Op};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Segment {
    pub letter: char,
    /// Exactly one letter instead of any number.
    pub one: bool,
}

pub(crate) fn star(letter: char) -> Segment {
    Segment { letter, one: false }
}

pub(crate) fn one(letter: char) -> Segment {
    Segment { letter, one: true }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Rel {
    Eq,
    Lt,
    Gt,
    #[allow(dead_code)]
    Le,
    Ge,
}

/// `e_dst REL ratio·e_src` with `src < dst`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Compare {
    pub src: usize,
    pub dst: usize,
    pub rel: Rel,
    pub ratio: usize,
}

pub(crate) fn cmp(src: usize, dst: usize, rel: Rel) -> Compare {
    Compare { src, dst, rel, ratio: 1 }
}

const COUNTERS: [char; 6] = ['X', 'Y', 'U', 'V', 'W', 'T'];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Key {
    pos: usize,
    /// Letters still owed to the last popped counter.
    owed: usize,
    /// More destination letters than counters.
    excess: bool,
}

fn holds(rel: Rel, below: bool, excess: bool) -> bool {
    let equal = !below && !excess;
    match rel {
        Rel::Eq => equal,
        Rel::Lt => below,
        Rel::Gt => excess,
        Rel::Le => !excess,
        Rel::Ge => !below,
    }
}

pub(crate) fn segment_machine(input: &[char], segs: &[Segment], cmps: &[Compare]) -> Dpda {
    for (i, c) in cmps.iter().enumerate() {
        assert!(c.src < c.dst && c.dst < segs.len() && c.ratio >= 1);
        assert!(!segs[c.src].one && !segs[c.dst].one);
        if let Some(next) = cmps.get(i + 1) {
            assert!(c.dst < next.src, "comparisons must not overlap");
        }
    }
    let r = segs.len();
    let sym = |i: usize| COUNTERS[i];
    let as_src = |p: usize| cmps.iter().position(|c| c.src == p);
    let as_dst = |p: usize| cmps.iter().position(|c| c.dst == p);

    // Whether the comparisons ending in [p, q) hold when leaving segment p.
    let settle = |k: &Key, q: usize, top: char| -> bool {
        cmps.iter().enumerate().filter(|(_, c)| k.pos <= c.dst && c.dst < q).all(|(i, c)| {
            let left = top == sym(i);
            if c.dst == k.pos {
                holds(c.rel, left || k.owed > 0, k.excess)
            } else {
                holds(c.rel, c.src <= k.pos && left, false)
            }
        })
    };

    let delta = |k: &Key, read: Read, top: char| -> Option<Act<Key>> {
        let c = match read {
            Read::Epsilon => return None,
            Read::Symbol(LEFT_END) => return Some(Act::Go(*k, Op::Keep)),
            Read::Symbol(c) => c,
        };
        let skippable = |a: usize, b: usize| (a..b).all(|s| !segs[s].one);
        if c == RIGHT_END {
            return Some(if skippable(k.pos, r) && settle(k, r, top) { accept() } else { reject() });
        }
        let q = (k.pos..r).find(|&q| segs[q].letter == c && skippable(k.pos, q) && !(q == k.pos && segs[q].one))?;
        if q > k.pos && !settle(k, q, top) {
            return Some(reject());
        }
        let fresh = Key { pos: q, owed: 0, excess: false };
        let cur = if q == k.pos { *k } else { fresh };
        if segs[q].one {
            return Some(Act::Go(Key { pos: q + 1, ..fresh }, Op::Keep));
        }
        if let Some(i) = as_src(q) {
            return Some(Act::Go(cur, Op::Push(sym(i))));
        }
        if let Some(i) = as_dst(q) {
            let cm = cmps[i];
            if cur.excess {
                return Some(Act::Go(cur, Op::Keep));
            }
            if cur.owed > 0 {
                return Some(Act::Go(Key { owed: cur.owed - 1, ..cur }, Op::Keep));
            }
            if top == sym(i) {
                return Some(Act::Go(Key { owed: cm.ratio - 1, ..cur }, Op::Pop));
            }
            if matches!(cm.rel, Rel::Eq | Rel::Le) {
                return Some(reject());
            }
            return Some(Act::Go(Key { excess: true, ..cur }, Op::Keep));
        }
        Some(Act::Go(cur, Op::Keep))
    };
    explore(input, &COUNTERS[..cmps.len()], Key { pos: 0, owed: 0, excess: false }, delta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal_forms::check_ideal_shape;
    use crate::strings::all_strings;

    fn counts(w: &str, letters: &[char]) -> Option<Vec<usize>> {
        let mut out = vec![0; letters.len()];
        let mut pos = 0;
        for c in w.chars() {
            let i = letters[pos..].iter().position(|&l| l == c)? + pos;
            out[i] += 1;
            pos = i;
        }
        Some(out)
    }

    #[test]
    fn anbn_and_ratios() {
        let m = segment_machine(&['a', 'b'], &[star('a'), star('b')], &[Compare { src: 0, dst: 1, rel: Rel::Eq, ratio: 2 }]);
        assert!(m.validate().is_valid());
        assert!(check_ideal_shape(&m).is_ideal());
        for w in all_strings(&['a', 'b'], 10) {
            let want = counts(&w, &['a', 'b']).is_some_and(|v| v[1] == 2 * v[0]);
            assert_eq!(m.accepts(&w, None).unwrap(), want, "{w}");
        }
    }

    #[test]
    fn every_relation_against_counts() {
        for rel in [Rel::Eq, Rel::Lt, Rel::Gt, Rel::Le, Rel::Ge] {
            for ratio in 1..=2 {
                let segs = [star('a'), star('b'), star('c')];
                let m = segment_machine(&['a', 'b', 'c'], &segs, &[Compare { src: 0, dst: 2, rel, ratio }]);
                assert!(m.validate().is_valid());
                for w in all_strings(&['a', 'b', 'c'], 7) {
                    let want = counts(&w, &['a', 'b', 'c']).is_some_and(|v| {
                        let (n, m) = (ratio * v[0], v[2]);
                        match rel {
                            Rel::Eq => m == n,
                            Rel::Lt => m < n,
                            Rel::Gt => m > n,
                            Rel::Le => m <= n,
                            Rel::Ge => m >= n,
                        }
                    });
                    assert_eq!(m.accepts(&w, None).unwrap(), want, "{rel:?} {ratio} {w}");
                }
            }
        }
    }

    #[test]
    fn separators_and_two_comparisons() {
        let segs = [star('a'), star('b'), one('#'), star('a'), star('b')];
        let m = segment_machine(&['a', 'b', '#'], &segs, &[cmp(0, 1, Rel::Eq), cmp(3, 4, Rel::Gt)]);
        assert!(m.validate().is_valid());
        assert!(m.accepts("ab#b", None).unwrap());
        assert!(m.accepts("#b", None).unwrap());
        assert!(!m.accepts("ab#ab", None).unwrap());
        assert!(!m.accepts("ab", None).unwrap());
        assert!(!m.accepts("ab##b", None).unwrap());
        assert!(!m.accepts("aab#b", None).unwrap());
    }
}
