//! Membership predicates written straight from the language definitions.

/// Letters `a₁ … a₄` of the multi-symbol alphabets.
pub const A_LETTERS: [char; 4] = ['a', 'b', 'c', 'd'];
/// Letters `b₁ … b₄` of the multi-symbol alphabets.
pub const B_LETTERS: [char; 4] = ['A', 'B', 'C', 'D'];

/// Exponents of `w` against `l₁* l₂* … lₖ*` for distinct letters.
pub fn run_counts(w: &str, letters: &[char]) -> Option<Vec<usize>> {
    let mut out = vec![0; letters.len()];
    let mut pos = 0;
    for c in w.chars() {
        let i = pos + letters[pos..].iter().position(|&l| l == c)?;
        out[i] += 1;
        pos = i;
    }
    Some(out)
}

fn sigma_d(d: usize) -> Vec<char> {
    A_LETTERS[..d].iter().chain(&B_LETTERS[..d]).copied().collect()
}

/// `(n₁…n_d, m₁…m_d)` for a string in `a₁*…a_d* b₁*…b_d*`.
pub fn ab_exponents(d: usize, w: &str) -> Option<(Vec<usize>, Vec<usize>)> {
    let v = run_counts(w, &sigma_d(d))?;
    Some((v[..d].to_vec(), v[d..].to_vec()))
}

pub fn anbn(w: &str) -> bool {
    run_counts(w, &['a', 'b']).is_some_and(|v| v[0] == v[1])
}

pub fn labc(w: &str) -> bool {
    run_counts(w, &['a', 'b', 'c']).is_some_and(|v| v[0] == v[1] && v[1] == v[2])
}

pub fn abc_a1(w: &str) -> bool {
    run_counts(w, &['a', 'b', 'c']).is_some_and(|v| v[0] == v[1])
}

pub fn abc_a2(w: &str) -> bool {
    run_counts(w, &['a', 'b', 'c']).is_some_and(|v| v[1] == v[2])
}

pub fn ld(d: usize, w: &str) -> bool {
    ab_exponents(d, w).is_some_and(|(n, m)| n == m)
}

pub fn ld_le(d: usize, w: &str) -> bool {
    ab_exponents(d, w).is_some_and(|(n, m)| n.iter().zip(&m).all(|(a, b)| a <= b))
}

/// Strings of the form `a₁*…b_d*` with some `nᵢ > mᵢ`.
pub fn ld_le_prime(d: usize, w: &str) -> bool {
    ab_exponents(d, w).is_some_and(|(n, m)| n.iter().zip(&m).any(|(a, b)| a > b))
}

/// `{aⁿ b^{kn} | k ∈ [d]}`.
pub fn lunion(d: usize, w: &str) -> bool {
    run_counts(w, &['a', 'b']).is_some_and(|v| (1..=d).any(|k| v[1] == k * v[0]))
}

pub fn pal(w: &str) -> bool {
    w.len().is_multiple_of(2) && w.chars().eq(w.chars().rev())
}

pub fn odd(w: &str) -> bool {
    w.chars().count() % 2 == 1
}

/// `{xy | |x| = |y|, y ≠ xᴿ}`.
pub fn npal(w: &str) -> bool {
    let c: Vec<char> = w.chars().collect();
    let h = c.len() / 2;
    c.len().is_multiple_of(2) && c[h..].iter().ne(c[..h].iter().rev())
}

fn reversed(s: &str) -> String {
    s.chars().rev().collect()
}

fn binary(s: &str) -> bool {
    s.chars().all(|c| c == '0' || c == '1')
}

/// Splits `w₁#…#w_d#v₁#…#v_d` into its `2d` binary blocks.
pub fn sharp_blocks(d: usize, w: &str) -> Option<(Vec<&str>, Vec<&str>)> {
    let parts: Vec<&str> = w.split('#').collect();
    if parts.len() != 2 * d || !parts.iter().all(|p| binary(p)) {
        return None;
    }
    Some((parts[..d].to_vec(), parts[d..].to_vec()))
}

pub fn npal_sharp_d(d: usize, w: &str) -> bool {
    sharp_blocks(d, w).is_some_and(|(ws, vs)| ws.iter().zip(&vs).all(|(a, b)| reversed(a) != *b))
}

pub fn npal_sharp_d_prime(d: usize, w: &str) -> bool {
    sharp_blocks(d, w).is_some_and(|(ws, vs)| ws.iter().zip(&vs).any(|(a, b)| reversed(a) == *b))
}

/// `x₁#…#x_m##y₁#…#y_n`, parsed at the leftmost `##`.
pub fn form_parse(w: &str) -> Option<(Vec<&str>, Vec<&str>)> {
    if !w.chars().all(|c| matches!(c, '0' | '1' | '#')) {
        return None;
    }
    let cut = w.find("##")?;
    let left: Vec<&str> = w[..cut].split('#').collect();
    let right: Vec<&str> = w[cut + 2..].split('#').collect();
    Some((left, right))
}

pub fn form(w: &str) -> bool {
    form_parse(w).is_some()
}

pub fn mpal_sharp(w: &str) -> bool {
    form_parse(w).is_some_and(|(ws, vs)| ws.iter().zip(&vs).any(|(a, b)| reversed(a) == *b))
}

pub fn npal_sharp(w: &str) -> bool {
    form_parse(w).is_some_and(|(ws, vs)| ws.iter().zip(&vs).all(|(a, b)| reversed(a) != *b))
}

fn dup_parts(w: &str) -> Option<(&str, &str)> {
    let (l, r) = w.split_once('c')?;
    let ab = |s: &str| s.chars().all(|c| c == 'a' || c == 'b');
    (ab(l) && ab(r)).then_some((l, r))
}

pub fn dup(w: &str) -> bool {
    dup_parts(w).is_some_and(|(l, r)| l == r)
}

pub fn lwot(w: &str) -> bool {
    dup_parts(w).is_some_and(|(l, r)| l != r)
}

/// Block `(n, m, p)` of a string `aⁿbᵐcᵖ`.
pub fn abc_block(s: &str) -> Option<(usize, usize, usize)> {
    run_counts(s, &['a', 'b', 'c']).map(|v| (v[0], v[1], v[2]))
}

/// Logical block numbers in the order they appear on the tape:
/// `2, 4, …` ascending, then the odd ones descending.
pub fn hibbard_order(k: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (2..=k).step_by(2).collect();
    let top_odd = if k % 2 == 1 { k } else { k - 1 };
    v.extend((1..=top_odd).rev().step_by(2));
    v
}

/// Blocks `w₁ … w_k` of a Hibbard-type string, indexed by logical number − 1.
pub fn hibbard_blocks(k: usize, w: &str) -> Option<Vec<(usize, usize, usize)>> {
    let parts: Vec<&str> = w.split('#').collect();
    if parts.len() != k {
        return None;
    }
    let mut out = vec![(0, 0, 0); k];
    for (slot, part) in hibbard_order(k).into_iter().zip(parts) {
        out[slot - 1] = abc_block(part)?;
    }
    Some(out)
}

/// Membership in `L_k` (or `L′_k` when `primed`), read as a chain: block 1
/// compares `n₁ ≤ m₁` (or `p₁ ≤ m₁`); the outcome (equal or strict) of each
/// block picks the comparison of the next one; the last block must be equal.
pub fn hibbard(k: usize, primed: bool, w: &str) -> bool {
    let Some(b) = hibbard_blocks(k, w) else { return false };
    let mut equal_before = true;
    for j in 1..=k {
        let (n, m, p) = b[j - 1];
        let (lo, hi) = match (j, equal_before) {
            (1, _) if primed => (p, m),
            (_, true) => (n, m),
            (j, false) if j % 2 == 0 => (m, p),
            (_, false) => (p, m),
        };
        if lo > hi || (j == k && lo != hi) {
            return false;
        }
        equal_before = lo == hi;
    }
    true
}
