//! Exhaustive enumeration of short strings.

/// Every string over `alphabet` of length at most `max_len`, shortest first.
pub fn all_strings(alphabet: &[char], max_len: usize) -> impl Iterator<Item = String> + '_ {
    (0..=max_len).flat_map(move |n| strings_of_length(alphabet, n))
}

/// Every string over `alphabet` of length exactly `n`, in lexicographic order of indices.
pub fn strings_of_length(alphabet: &[char], n: usize) -> impl Iterator<Item = String> + '_ {
    let k = alphabet.len();
    let total = if k == 0 && n > 0 { 0 } else { k.pow(n as u32) };
    (0..total).map(move |mut i| {
        let mut buf = vec![' '; n];
        for slot in buf.iter_mut().rev() {
            *slot = alphabet[i % k];
            i /= k;
        }
        buf.into_iter().collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(all_strings(&['a', 'b'], 3).count(), 15);
        assert_eq!(strings_of_length(&['a', 'b', 'c'], 0).collect::<Vec<_>>(), vec![String::new()]);
        assert_eq!(strings_of_length(&['a', 'b'], 2).collect::<Vec<_>>(), vec!["aa", "ab", "ba", "bb"]);
    }
}
