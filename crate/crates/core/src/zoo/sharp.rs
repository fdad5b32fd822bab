//! Machines over `{0,1,#}` comparing one block `vᵢ` with the reverse of `wᵢ`
//! in strings `w₁#…#w_d#v₁#…#v_d`.

use crate::automaton::{Dpda, Read, LEFT_END, RIGHT_END};

use super::build::{accept, explore, reject, Act, Op, BOTTOM};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Phase {
    Open,
    Compare,
    /// Popping what is left of `wᵢ` after a mismatch.
    Drain,
    Done,
}

fn counter(c: char) -> char {
    if c == '0' {
        'P'
    } else {
        'Q'
    }
}

/// Accepts well-formed strings with `vᵢ ≠ wᵢᴿ` (`equal = false`) or
/// `vᵢ = wᵢᴿ` (`equal = true`); `i` is 0-based.
pub(crate) fn block_machine(d: usize, i: usize, equal: bool) -> Dpda {
    assert!(i < d);
    let last = 2 * d - 1;
    let (wi, vi) = (i, d + i);
    // Verdict once vᵢ has been fully compared.
    let settle = move |same: bool| same == equal;
    let delta = move |k: &(usize, Phase), read: Read, top: char| -> Option<Act<(usize, Phase)>> {
        let (b, ph) = *k;
        if ph == Phase::Drain && top != BOTTOM {
            return match read {
                Read::Epsilon => Some(Act::Go((b, Phase::Drain), Op::Pop)),
                _ => None,
            };
        }
        let ph = if ph == Phase::Drain { Phase::Done } else { ph };
        let c = match read {
            Read::Epsilon => return None,
            Read::Symbol(LEFT_END) => return Some(Act::Go((b, ph), Op::Keep)),
            Read::Symbol(c) => c,
        };
        if c == '#' || c == RIGHT_END {
            let mut ph = ph;
            let mut op = Op::Keep;
            if ph == Phase::Compare {
                let same = top == BOTTOM;
                if !settle(same) {
                    return Some(reject());
                }
                // A shorter vᵢ leaves part of wᵢ behind.
                if same {
                    ph = Phase::Done;
                } else {
                    ph = Phase::Drain;
                    op = Op::Pop;
                }
            }
            if c == RIGHT_END {
                return Some(if b == last && ph != Phase::Open { accept() } else { reject() });
            }
            if b == last {
                return Some(reject());
            }
            let next = if b + 1 == vi { Phase::Compare } else { ph };
            return Some(Act::Go((b + 1, next), op));
        }
        if b == wi {
            return Some(Act::Go((b, ph), Op::Push(counter(c))));
        }
        if ph == Phase::Compare {
            if top == counter(c) {
                return Some(Act::Go((b, ph), Op::Pop));
            }
            if !settle(false) {
                return Some(reject());
            }
            return Some(if top == BOTTOM {
                Act::Go((b, Phase::Done), Op::Keep)
            } else {
                Act::Go((b, Phase::Drain), Op::Pop)
            });
        }
        Some(Act::Go((b, ph), Op::Keep))
    };
    let start = (0, Phase::Open);
    explore(&['0', '1', '#'], &['P', 'Q'], start, delta)
}
