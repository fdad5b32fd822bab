//! Concrete languages: ground-truth predicates, DPDA decompositions and the
//! witness strings used by the refutation workflows.

pub(crate) mod build;
pub mod hibbard;
pub mod lang;
mod segments;
mod sharp;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::automaton::{anbn, Dpda};
use crate::dfa::Dfa;
use crate::language::{LanguageSpec, Node, Predicate};
use crate::strings::all_strings;

use lang::{A_LETTERS, B_LETTERS};
use segments::{cmp, segment_machine, star, Compare, Rel};

#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize)]
pub enum ZooError {
    #[error("unknown zoo entry `{0}`")]
    Unknown(String),
    #[error("unsupported parameters: {0}")]
    UnsupportedParams(String),
    #[error("entry `{0}` has no DPDA decomposition")]
    NoSpec(String),
}

#[derive(Clone)]
pub struct ZooEntry {
    pub name: String,
    pub alphabet: Vec<char>,
    pub predicate: Predicate,
    pub spec: Option<LanguageSpec>,
    /// What the entry is and how its spec is put together.
    pub origin: String,
}

impl fmt::Debug for ZooEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ZooEntry")
            .field("name", &self.name)
            .field("alphabet", &self.alphabet)
            .field("spec", &self.spec)
            .field("origin", &self.origin)
            .finish()
    }
}

impl ZooEntry {
    pub fn member(&self, w: &str) -> bool {
        (self.predicate)(w)
    }

    /// Exhaustive validation length: 10 on binary alphabets, 8 otherwise.
    pub fn validation_len(&self) -> usize {
        if self.alphabet.len() <= 2 {
            10
        } else {
            8
        }
    }
}

/// Name, parameter range (`None` for unparameterised families) and description.
pub type Family = (&'static str, Option<(usize, usize)>, &'static str);

pub const FAMILIES: &[Family] = &[
    ("anbn", None, "a^n b^n"),
    ("labc", None, "a^n b^n c^n as the intersection of A1 = {a^n b^n c^p} and A2 = {a^n b^m c^m}"),
    ("abc-a1", None, "a^n b^n c^p"),
    ("abc-a2", None, "a^n b^m c^m"),
    ("ld", Some((1, 4)), "a1^n1..ad^nd b1^n1..bd^nd, intersection of the per-index equalities"),
    ("ld-le", Some((1, 4)), "a1^n1..ad^nd b1^m1..bd^md with every n_i <= m_i, intersection of the per-index comparisons"),
    ("ld-le-prime", Some((1, 4)), "strings of a1*..bd* with some n_i > m_i, union of the per-index comparisons"),
    ("lunion", Some((1, 4)), "a^n b^(kn) for k in 1..=d, union over k"),
    ("pal", None, "even palindromes w w^R over {0,1}"),
    ("npal", None, "xy with |x| = |y| and y != x^R"),
    ("odd", None, "binary strings of odd length"),
    ("co-pal", None, "complement of pal as ODD or (even length and NPal)"),
    ("npal-sharp", Some((1, 4)), "w1#..#wd#v1#..#vd with every v_i != w_i^R, intersection over i"),
    ("npal-sharp-prime", Some((1, 4)), "w1#..#wd#v1#..#vd with some v_i = w_i^R, union over i"),
    ("mpal-sharp", None, "x1#..#xm##y1#..#yn with some y_i = x_i^R, split at the leftmost ##"),
    ("npal-sharp-all", None, "x1#..#xm##y1#..#yn with no y_i = x_i^R, as FORM minus mpal-sharp"),
    ("form", None, "binary blocks containing ##"),
    ("hibbard", Some((1, 4)), "the Hibbard-type chain language L_k, union of 2^(k-1) segment machines"),
    ("hibbard-prime", Some((1, 4)), "L_k with the first block read as a^p b^m c^n"),
    ("dup", None, "w c w over {a,b}, as {a,b}*c{a,b}* minus lwot"),
    ("lwot", None, "w c x over {a,b} with w != x"),
];

/// Splits `family-<param>` into its parts.
pub fn parse_name(name: &str) -> (&str, Option<usize>) {
    if let Some((f, p)) = name.rsplit_once('-') {
        if let Ok(v) = p.parse() {
            return (f, Some(v));
        }
    }
    (name, None)
}

/// Every entry name for the parameters within range.
pub fn list() -> Vec<String> {
    let mut out = Vec::new();
    for (family, range, _) in FAMILIES {
        match range {
            None => out.push(family.to_string()),
            Some((lo, hi)) => out.extend((*lo..=*hi).map(|p| format!("{family}-{p}"))),
        }
    }
    out
}

fn pred(f: impl Fn(&str) -> bool + Send + Sync + 'static) -> Predicate {
    Arc::new(f)
}

fn sigma(d: usize) -> Vec<char> {
    A_LETTERS[..d].iter().chain(&B_LETTERS[..d]).copied().collect()
}

/// One machine on `a₁*…a_d* b₁*…b_d*` comparing `m_i` against `n_i`.
fn ab_machine(d: usize, i: usize, rel: Rel) -> Dpda {
    let s = sigma(d);
    let segs: Vec<_> = s.iter().map(|&c| star(c)).collect();
    segment_machine(&s, &segs, &[cmp(i, d + i, rel)])
}

fn abc_machine(c: Compare) -> Dpda {
    segment_machine(&['a', 'b', 'c'], &[star('a'), star('b'), star('c')], &[c])
}

const BINARY: [char; 2] = ['0', '1'];
const SHARP: [char; 3] = ['0', '1', '#'];
const DUP: [char; 3] = ['a', 'b', 'c'];
const HIBBARD: [char; 4] = ['a', 'b', 'c', '#'];

fn odd_dfa() -> Dfa {
    Dfa::from_fn(&BINARY, 2, 0, &[1], |s, _| 1 - s)
}

/// Binary blocks containing `##`.
fn form_dfa() -> Dfa {
    Dfa::from_fn(&SHARP, 3, 0, &[2], |s, c| match (s, c) {
        (2, _) => 2,
        (1, '#') => 2,
        (_, '#') => 1,
        _ => 0,
    })
}

fn spec(alphabet: &[char], root: Node) -> LanguageSpec {
    LanguageSpec::new(alphabet, root).expect("zoo leaves share the entry alphabet")
}

pub fn build_entry(name: &str) -> Result<ZooEntry, ZooError> {
    let (family, param) = parse_name(name);
    let Some((_, range, origin)) = FAMILIES.iter().find(|(f, _, _)| *f == family) else {
        return Err(ZooError::Unknown(name.to_string()));
    };
    let p = match (range, param) {
        (None, None) => 0,
        (Some((lo, hi)), Some(p)) if (*lo..=*hi).contains(&p) => p,
        (Some((lo, hi)), Some(p)) => {
            return Err(ZooError::UnsupportedParams(format!("{family} needs a parameter in {lo}..={hi}, got {p}")))
        }
        (Some(_), None) => return Err(ZooError::UnsupportedParams(format!("{family} needs a parameter"))),
        (None, Some(_)) => return Err(ZooError::Unknown(name.to_string())),
    };
    let (alphabet, predicate, spec): (Vec<char>, Predicate, Option<LanguageSpec>) = match family {
        "anbn" => (vec!['a', 'b'], pred(lang::anbn), Some(LanguageSpec::single("anbn", anbn()))),
        "labc" => {
            let a1 = Node::dpda("A1", abc_machine(cmp(0, 1, Rel::Eq)));
            let a2 = Node::dpda("A2", abc_machine(cmp(1, 2, Rel::Eq)));
            (DUP.to_vec(), pred(lang::labc), Some(spec(&DUP, Node::Intersection(vec![a1, a2]))))
        }
        "abc-a1" => (DUP.to_vec(), pred(lang::abc_a1), Some(LanguageSpec::single("A1", abc_machine(cmp(0, 1, Rel::Eq))))),
        "abc-a2" => (DUP.to_vec(), pred(lang::abc_a2), Some(LanguageSpec::single("A2", abc_machine(cmp(1, 2, Rel::Eq))))),
        "ld" | "ld-le" | "ld-le-prime" => {
            let s = sigma(p);
            let (rel, prefix) = match family {
                "ld" => (Rel::Eq, "eq"),
                "ld-le" => (Rel::Ge, "le"),
                _ => (Rel::Lt, "gt"),
            };
            let leaves: Vec<Node> = (0..p).map(|i| Node::dpda(format!("{prefix}{}", i + 1), ab_machine(p, i, rel))).collect();
            let root = if family == "ld-le-prime" { Node::Union(leaves) } else { Node::Intersection(leaves) };
            let predicate = match family {
                "ld" => pred(move |w| lang::ld(p, w)),
                "ld-le" => pred(move |w| lang::ld_le(p, w)),
                _ => pred(move |w| lang::ld_le_prime(p, w)),
            };
            (s.clone(), predicate, Some(spec(&s, root)))
        }
        "lunion" => {
            let leaves = (1..=p)
                .map(|k| {
                    let m = segment_machine(&['a', 'b'], &[star('a'), star('b')], &[Compare { src: 0, dst: 1, rel: Rel::Eq, ratio: k }]);
                    Node::dpda(format!("ratio{k}"), m)
                })
                .collect();
            (vec!['a', 'b'], pred(move |w| lang::lunion(p, w)), Some(spec(&['a', 'b'], Node::Union(leaves))))
        }
        "pal" => (BINARY.to_vec(), pred(lang::pal), None),
        "npal" => (BINARY.to_vec(), pred(lang::npal), None),
        "odd" => (BINARY.to_vec(), pred(lang::odd), Some(spec(&BINARY, Node::dfa("ODD", odd_dfa())))),
        "co-pal" => {
            let root = Node::Union(vec![
                Node::dfa("ODD", odd_dfa()),
                Node::Intersection(vec![Node::dfa("EVEN", odd_dfa().complement()), Node::predicate("NPal", lang::npal)]),
            ]);
            (BINARY.to_vec(), pred(|w| !lang::pal(w)), Some(spec(&BINARY, root)))
        }
        "npal-sharp" | "npal-sharp-prime" => {
            let equal = family == "npal-sharp-prime";
            let leaves: Vec<Node> = (0..p)
                .map(|i| Node::dpda(format!("{}{}", if equal { "E" } else { "N" }, i + 1), sharp::block_machine(p, i, equal)))
                .collect();
            let (root, predicate) = if equal {
                (Node::Union(leaves), pred(move |w| lang::npal_sharp_d_prime(p, w)))
            } else {
                (Node::Intersection(leaves), pred(move |w| lang::npal_sharp_d(p, w)))
            };
            (SHARP.to_vec(), predicate, Some(spec(&SHARP, root)))
        }
        "mpal-sharp" => (SHARP.to_vec(), pred(lang::mpal_sharp), None),
        "npal-sharp-all" => {
            let root = Node::Intersection(vec![
                Node::dfa("FORM", form_dfa()),
                Node::complement(Node::predicate("MPal#", lang::mpal_sharp)),
            ]);
            (SHARP.to_vec(), pred(lang::npal_sharp), Some(spec(&SHARP, root)))
        }
        "form" => (SHARP.to_vec(), pred(lang::form), Some(spec(&SHARP, Node::dfa("FORM", form_dfa())))),
        "hibbard" | "hibbard-prime" => {
            let primed = family == "hibbard-prime";
            let leaves = hibbard::components(p, primed)
                .iter()
                .map(|c| Node::dpda(format!("A[{}]", hibbard::label(c)), hibbard::component_machine(c)))
                .collect();
            (HIBBARD.to_vec(), pred(move |w| lang::hibbard(p, primed, w)), Some(spec(&HIBBARD, Node::Union(leaves))))
        }
        "dup" => {
            let shape = Dfa::from_fn(&DUP, 3, 0, &[1], |s, c| match (s, c) {
                (0, 'c') => 1,
                (0, _) => 0,
                (1, 'c') | (2, _) => 2,
                _ => 1,
            });
            let root = Node::Intersection(vec![Node::dfa("wcx", shape), Node::complement(Node::predicate("Lwot", lang::lwot))]);
            (DUP.to_vec(), pred(lang::dup), Some(spec(&DUP, root)))
        }
        "lwot" => (DUP.to_vec(), pred(lang::lwot), None),
        _ => unreachable!("family table and constructors agree"),
    };
    let origin = match param {
        Some(p) => format!("{origin} (parameter {p})"),
        None => origin.to_string(),
    };
    Ok(ZooEntry { name: name.to_string(), alphabet, predicate, spec, origin })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AgreementReport {
    pub name: String,
    pub max_len: usize,
    pub strings: u64,
    pub disagreements: u64,
    /// Up to 20 disagreeing strings with the predicate's verdict.
    pub examples: Vec<(String, bool)>,
    /// Strings on which a machine failed to run.
    pub errors: Vec<(String, String)>,
}

impl AgreementReport {
    pub fn agrees(&self) -> bool {
        self.disagreements == 0 && self.errors.is_empty()
    }
}

/// Compares predicate and spec on every string up to `max_len`.
pub fn cross_validate(entry: &ZooEntry, max_len: usize) -> Result<AgreementReport, ZooError> {
    let spec = entry.spec.as_ref().ok_or_else(|| ZooError::NoSpec(entry.name.clone()))?;
    let mut r = AgreementReport {
        name: entry.name.clone(),
        max_len,
        strings: 0,
        disagreements: 0,
        examples: Vec::new(),
        errors: Vec::new(),
    };
    for w in all_strings(&entry.alphabet, max_len) {
        r.strings += 1;
        let want = entry.member(&w);
        match spec.member(&w, None) {
            Ok(got) if got == want => {}
            Ok(_) => {
                r.disagreements += 1;
                if r.examples.len() < 20 {
                    r.examples.push((w, want));
                }
            }
            Err(e) => {
                if r.errors.len() < 20 {
                    r.errors.push((w, e.to_string()));
                }
            }
        }
    }
    Ok(r)
}

/// Every DPDA leaf of the entries that make up the machine sweeps.
pub fn all_machines() -> Vec<(String, Dpda)> {
    let names = [
        "anbn", "labc", "ld-2", "ld-3", "ld-le-2", "ld-le-prime-2", "lunion-2", "lunion-3", "npal-sharp-2",
        "npal-sharp-prime-2", "hibbard-2", "hibbard-3", "hibbard-prime-2",
    ];
    let mut out = Vec::new();
    for n in names {
        let e = build_entry(n).expect("listed entries exist");
        for (leaf, m) in e.spec.as_ref().expect("listed entries have specs").components() {
            out.push((format!("{n}/{leaf}"), m.clone()));
        }
    }
    out
}

/// Machine-definition files `(file name, JSON)` for every DPDA leaf.
pub fn export(entry: &ZooEntry) -> Result<Vec<(String, String)>, ZooError> {
    let spec = entry.spec.as_ref().ok_or_else(|| ZooError::NoSpec(entry.name.clone()))?;
    let leaves = spec.components();
    if leaves.is_empty() {
        return Err(ZooError::NoSpec(entry.name.clone()));
    }
    Ok(leaves
        .into_iter()
        .map(|(leaf, m)| {
            let file: String = leaf.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect();
            (format!("{}.{file}.json", entry.name), m.to_json())
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub label: String,
    pub word: String,
    /// Membership of complete words in the family's language; `None` for parts.
    pub member: Option<bool>,
}

fn part(label: impl Into<String>, word: String) -> Witness {
    Witness { label: label.into(), word, member: None }
}

fn whole(label: impl Into<String>, word: String, member: bool) -> Witness {
    Witness { label: label.into(), word, member: Some(member) }
}

fn rep(c: char, k: usize) -> String {
    std::iter::repeat_n(c, k).collect()
}

/// `w_k = 0ⁿ1ⁿ…0ⁿ` with `2k+1` blocks.
pub fn pal_block_string(n: usize, k: usize) -> String {
    (0..2 * k + 1).map(|b| rep(if b % 2 == 0 { '0' } else { '1' }, n)).collect()
}

/// The four block shapes of a Hibbard witness for block size `nj`.
pub fn hibbard_quadruple(nj: usize) -> [String; 4] {
    assert!(nj >= 1);
    let blk = |a, b, c| format!("{}{}{}", rep('a', a), rep('b', b), rep('c', c));
    [blk(nj, nj, nj - 1), blk(nj, nj + 1, nj), blk(nj, nj - 1, nj - 1), blk(nj, nj - 1, nj)]
}

/// `α_s` for `s` indexed by logical block (`s[0]` is `s₁`).
pub fn hibbard_alpha(k: usize, n: usize, s: &[usize]) -> String {
    lang::hibbard_order(k)
        .into_iter()
        .map(|j| hibbard_quadruple(n + j - 1)[s[j - 1] - 1].clone())
        .collect::<Vec<_>>()
        .join("#")
}

/// Binary strings `w_i` of length `n` used by the NPal#_d witnesses.
pub fn sharp_word(n: usize, i: usize) -> String {
    (0..n).map(|t| if t < i { '1' } else { '0' }).collect()
}

/// Witness families of the refutation workflows, parameterised by `n`.
///
/// * `lunion-<d>`: `x = aⁿ`, `y⁽ⁱ⁾ = b^{in}`.
/// * `ld-le-<d>`: `x = a₁ⁿ…a_d^{dn}` and `y⁽ᵏ⁾` with `b_k^{kn−1}`; the words lie in the complement side `L′`.
/// * `npal-sharp-<d>`: `x = w₁#…#w_d#`, `y⁽ⁱ⁾` with `vᵢ` replaced by `wᵢᴿ`; words in `L′`.
/// * `pal-<d>`: `w_k` for `k ∈ [d+1]`.
/// * `hibbard-<k>`: quadruples for `n_j = n + j − 1` and every `α_s`.
pub fn witness_strings(name: &str, n: usize) -> Result<Vec<Witness>, ZooError> {
    let (family, param) = parse_name(name);
    let d = param.ok_or_else(|| ZooError::UnsupportedParams(format!("{name} needs a parameter")))?;
    if n == 0 {
        return Err(ZooError::UnsupportedParams("n must be positive".into()));
    }
    let mut out = Vec::new();
    match family {
        "lunion" if (1..=4).contains(&d) => {
            let x = rep('a', n);
            out.push(part("x", x.clone()));
            for i in 1..=d {
                let y = rep('b', i * n);
                out.push(part(format!("y{i}"), y.clone()));
                let w = format!("{x}{y}");
                out.push(whole(format!("x.y{i}"), w.clone(), lang::lunion(d, &w)));
            }
        }
        "ld-le" if (1..=4).contains(&d) => {
            let x: String = (1..=d).map(|i| rep(A_LETTERS[i - 1], i * n)).collect();
            out.push(part("x", x.clone()));
            for k in 1..=d {
                let y: String = (1..=d).map(|i| rep(B_LETTERS[i - 1], i * n - usize::from(i == k))).collect();
                out.push(part(format!("y{k}"), y.clone()));
                let w = format!("{x}{y}");
                out.push(whole(format!("x.y{k}"), w.clone(), lang::ld_le_prime(d, &w)));
            }
        }
        "npal-sharp" if (1..=4).contains(&d) => {
            let ws: Vec<String> = (0..d).map(|i| sharp_word(n, i + 1)).collect();
            let rev = |s: &str| s.chars().rev().collect::<String>();
            let vs: Vec<String> = ws.iter().map(|w| format!("{}{}", rev(w), rep('1', n))).collect();
            let x: String = ws.iter().map(|w| format!("{w}#")).collect();
            out.push(part("x", x.clone()));
            for i in 0..d {
                let y = (0..d).map(|j| if j == i { rev(&ws[j]) } else { vs[j].clone() }).collect::<Vec<_>>().join("#");
                out.push(part(format!("y{}", i + 1), y.clone()));
                let w = format!("{x}{y}");
                out.push(whole(format!("x.y{}", i + 1), w.clone(), lang::npal_sharp_d_prime(d, &w)));
            }
        }
        "pal" if (1..=4).contains(&d) => {
            for k in 1..=d + 1 {
                let w = pal_block_string(n, k);
                out.push(whole(format!("w{k}"), w.clone(), lang::pal(&w)));
            }
        }
        "hibbard" if (2..=4).contains(&d) => {
            for j in 1..=d {
                for (t, w) in hibbard_quadruple(n + j - 1).into_iter().enumerate() {
                    out.push(part(format!("w{j}^({})", t + 1), w));
                }
            }
            // s₁ ∈ {1,2}, the others range over {1,2,3,4}.
            let mut s = vec![1; d];
            loop {
                let w = hibbard_alpha(d, n, &s);
                let label = format!("alpha[{}]", s.iter().map(|v| v.to_string()).collect::<String>());
                out.push(whole(label, w.clone(), lang::hibbard(d, false, &w)));
                let mut i = 0;
                loop {
                    let cap = if i == 0 { 2 } else { 4 };
                    if s[i] < cap {
                        s[i] += 1;
                        break;
                    }
                    s[i] = 1;
                    i += 1;
                    if i == d {
                        return Ok(out);
                    }
                }
            }
        }
        "lunion" | "ld-le" | "npal-sharp" | "pal" | "hibbard" => {
            return Err(ZooError::UnsupportedParams(format!("{name} is out of range")))
        }
        _ => return Err(ZooError::Unknown(name.to_string())),
    }
    Ok(out)
}
