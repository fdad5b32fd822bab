//! Condition checks for the two pumping lemmas for finite unions of DCFLs,
//! witness search, and bounded refutation of concrete instances.

use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use crate::automaton::Dpda;
use crate::language::{LanguageSpec, Node};
use crate::pairs::{grid_verdict, pump_test, Factorization5, PairError, PumpResult, Tri};
use crate::zoo::lang::{A_LETTERS, B_LETTERS};
use crate::zoo::{self, build_entry, pal_block_string, parse_name, sharp_word, ZooError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Condition {
    L1C1,
    L1C2,
    L2C1,
    L2C2,
    L2C3,
    L2C4a,
    L2C4b,
    L2C4c,
    L2C5a,
    L2C5b,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Condition::L1C1 => "lemma1 (1)",
            Condition::L1C2 => "lemma1 (2)",
            Condition::L2C1 => "lemma2 (1)",
            Condition::L2C2 => "lemma2 (2)",
            Condition::L2C3 => "lemma2 (3)",
            Condition::L2C4a => "lemma2 (4a)",
            Condition::L2C4b => "lemma2 (4b)",
            Condition::L2C4c => "lemma2 (4c)",
            Condition::L2C5a => "lemma2 (5a)",
            Condition::L2C5b => "lemma2 (5b)",
        };
        f.write_str(s)
    }
}

/// Factorizations of the strings a condition talks about, each certified by a pump test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionWitness {
    pub which: Condition,
    pub j1: Option<usize>,
    pub j2: Option<usize>,
    pub factorizations: Vec<Factorization5>,
    pub certification: Vec<PumpResult>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    pub witness: Option<ConditionWitness>,
    /// Size of the constrained candidate space.
    pub space: u64,
}

fn chars(s: &str) -> Vec<char> {
    s.chars().collect()
}

fn sub(w: &[char], a: usize, b: usize) -> String {
    w[a..b].iter().collect()
}

fn five(w: &[char], c: [usize; 4]) -> Factorization5 {
    Factorization5 {
        u: sub(w, 0, c[0]),
        x: sub(w, c[0], c[1]),
        v: sub(w, c[1], c[2]),
        y: sub(w, c[2], c[3]),
        z: sub(w, c[3], w.len()),
    }
}

fn check_members(spec: &LanguageSpec, words: &[String]) -> Result<(), PairError> {
    for w in words {
        if !spec.member(w, None)? {
            return Err(PairError::PremiseViolated(format!("{w:?} is not in the language")));
        }
    }
    Ok(())
}

/// Factorizations `x′ = x₁x₂x₃x₄x₅` with `|x₂x₄| ≥ 1` and `|x₂x₃x₄| ≤ c`, as
/// cut positions, ordered by the start of `x₂` and then by sizes.
pub fn lemma1_condition1_cuts(n: usize, c: usize) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for p in 0..=n {
        for s in 1..=c.min(n - p) {
            for a in 0..=s {
                for e in 0..=s - a {
                    if a + e == 0 {
                        continue;
                    }
                    let b = s - a - e;
                    out.push([p, p + a, p + a + b, p + s]);
                }
            }
        }
    }
    out
}

/// Splits `x′ = x₁x₂x₃` with `|x₂| ≥ 1` and `|x₂x₃| ≤ c`, as `(|x₁|, |x₁x₂|)`.
pub fn lemma1_condition2_splits(n: usize, c: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for p in n.saturating_sub(c)..n {
        for q in p + 1..=n {
            out.push((p, q));
        }
    }
    out
}

/// Every `w = w₁w₂w₃` as `(|w₁|, |w₁w₂|)`.
pub fn three_way_cuts(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in 0..=n {
        for b in a..=n {
            out.push((a, b));
        }
    }
    out
}

fn premise(spec: &LanguageSpec, xp: &str, y: &str, z: &str, c: usize) -> Result<(), PairError> {
    if xp.chars().count() <= c {
        return Err(PairError::PremiseViolated(format!("|x′| = {} is not above c = {c}", xp.chars().count())));
    }
    check_members(spec, &[format!("{xp}{y}"), format!("{xp}{z}")])
}

/// Searches for `x′ = x₁x₂x₃x₄x₅` such that `(x₂,x₄)` pumps in both `x′y` and `x′z`.
pub fn lemma1_check_condition1(
    spec: &LanguageSpec,
    xp: &str,
    y: &str,
    z: &str,
    c: usize,
    i_max: usize,
) -> Result<SearchOutcome, PairError> {
    premise(spec, xp, y, z, c)?;
    let w = chars(xp);
    let cuts = lemma1_condition1_cuts(w.len(), c);
    let space = cuts.len() as u64;
    for k in cuts {
        let base = five(&w, k);
        let fy = Factorization5 { z: format!("{}{y}", base.z), ..base.clone() };
        let ry = pump_test(spec, &fy, i_max)?;
        if !ry.passes {
            continue;
        }
        let fz = Factorization5 { z: format!("{}{z}", base.z), ..base };
        let rz = pump_test(spec, &fz, i_max)?;
        if rz.passes {
            let witness = ConditionWitness {
                which: Condition::L1C1,
                j1: None,
                j2: None,
                factorizations: vec![fy, fz],
                certification: vec![ry, rz],
            };
            return Ok(SearchOutcome { witness: Some(witness), space });
        }
    }
    Ok(SearchOutcome { witness: None, space })
}

/// First passing factorization `(x₁, x₂, x₃u₁, u₂, u₃)` of `x′u` for a fixed split of `x′`.
fn first_suffix_pump(
    spec: &LanguageSpec,
    w: &[char],
    (p, q): (usize, usize),
    u: &[char],
    i_max: usize,
) -> Result<Option<(Factorization5, PumpResult)>, PairError> {
    for (a, b) in three_way_cuts(u.len()) {
        let f = Factorization5 {
            u: sub(w, 0, p),
            x: sub(w, p, q),
            v: format!("{}{}", sub(w, q, w.len()), sub(u, 0, a)),
            y: sub(u, a, b),
            z: sub(u, b, u.len()),
        };
        let r = pump_test(spec, &f, i_max)?;
        if r.passes {
            return Ok(Some((f, r)));
        }
    }
    Ok(None)
}

/// Searches for splits `x′ = x₁x₂x₃`, `y = y₁y₂y₃`, `z = z₁z₂z₃` such that
/// `(x₂,y₂)` pumps in `x′y` and `(x₂,z₂)` pumps in `x′z`.
pub fn lemma1_check_condition2(
    spec: &LanguageSpec,
    xp: &str,
    y: &str,
    z: &str,
    c: usize,
    i_max: usize,
) -> Result<SearchOutcome, PairError> {
    premise(spec, xp, y, z, c)?;
    let w = chars(xp);
    let (yc, zc) = (chars(y), chars(z));
    let splits = lemma1_condition2_splits(w.len(), c);
    let space = (splits.len() * three_way_cuts(yc.len()).len() * three_way_cuts(zc.len()).len()) as u64;
    for s in splits {
        let Some((fy, ry)) = first_suffix_pump(spec, &w, s, &yc, i_max)? else { continue };
        let Some((fz, rz)) = first_suffix_pump(spec, &w, s, &zc, i_max)? else { continue };
        let witness = ConditionWitness {
            which: Condition::L1C2,
            j1: None,
            j2: None,
            factorizations: vec![fy, fz],
            certification: vec![ry, rz],
        };
        return Ok(SearchOutcome { witness: Some(witness), space });
    }
    Ok(SearchOutcome { witness: None, space })
}

/// `d + 1` strings `x·y⁽ⁱ⁾` of a `d`-union language.
#[derive(Clone, Debug)]
pub struct Lemma1Instance {
    pub spec: LanguageSpec,
    pub c: usize,
    pub x: String,
    pub ys: Vec<String>,
    pub i_max: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessSearch {
    pub c: usize,
    pub i_max: usize,
    /// First success in the fixed order: pairs, then splits, condition 1 before 2.
    pub found: Option<(usize, usize, ConditionWitness)>,
    /// Every index pair `(j1, j2)` for which some split succeeded, 1-based.
    pub working_pairs: Vec<(usize, usize)>,
    pub splits_tried: u64,
    pub space: u64,
}

/// Tries every pair `j1 < j2` and every split of the common prefix of
/// `x·y⁽ʲ¹⁾` and `x·y⁽ʲ²⁾` into `x′` with `|x′| > c`.
pub fn lemma1_witness_search(inst: &Lemma1Instance) -> Result<WitnessSearch, PairError> {
    if inst.x.chars().count() <= inst.c {
        return Err(PairError::PremiseViolated("|x| must exceed c".into()));
    }
    if inst.ys.iter().any(String::is_empty) {
        return Err(PairError::PremiseViolated("every y⁽ⁱ⁾ must be nonempty".into()));
    }
    let words: Vec<String> = inst.ys.iter().map(|y| format!("{}{y}", inst.x)).collect();
    check_members(&inst.spec, &words)?;
    let mut out = WitnessSearch {
        c: inst.c,
        i_max: inst.i_max,
        found: None,
        working_pairs: Vec::new(),
        splits_tried: 0,
        space: 0,
    };
    for j1 in 0..words.len() {
        for j2 in j1 + 1..words.len() {
            let (a, b) = (chars(&words[j1]), chars(&words[j2]));
            let common = a.iter().zip(&b).take_while(|(p, q)| p == q).count();
            let mut pair_works = false;
            for len in inst.c + 1..=common {
                let xp = sub(&a, 0, len);
                let (y, z) = (sub(&a, len, a.len()), sub(&b, len, b.len()));
                out.splits_tried += 1;
                for cond in [lemma1_check_condition1, lemma1_check_condition2] {
                    let r = cond(&inst.spec, &xp, &y, &z, inst.c, inst.i_max)?;
                    out.space += r.space;
                    if let Some(mut w) = r.witness {
                        pair_works = true;
                        if out.found.is_none() {
                            w.j1 = Some(j1 + 1);
                            w.j2 = Some(j2 + 1);
                            out.found = Some((j1 + 1, j2 + 1, w));
                        }
                        break;
                    }
                }
                if pair_works {
                    break;
                }
            }
            if pair_works {
                out.working_pairs.push((j1 + 1, j2 + 1));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NdBounds {
    /// Pump exponents `0..=i_max` for the iterative-pair test.
    pub i_max: usize,
    /// Side of the grid used for bounded nondegeneracy.
    pub grid: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    HoldsWithWitness(Vec<Factorization5>),
    FailsExhaustively,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub x_prime: String,
    pub y: String,
    pub z: String,
    pub bounds: NdBounds,
    pub verdicts: Vec<(Condition, Verdict)>,
    /// Factorizations examined per string (`x′y`, `x′z`).
    pub space: [u64; 2],
}

impl ConditionReport {
    pub fn verdict(&self, c: Condition) -> &Verdict {
        &self.verdicts.iter().find(|(k, _)| *k == c).expect("every condition is reported").1
    }
    /// No condition holds and none is inconclusive.
    pub fn refuted(&self) -> bool {
        self.verdicts.iter().all(|(_, v)| *v == Verdict::FailsExhaustively)
    }
}

/// Nondegenerate iterative pairs of one string, classified by bounded evidence.
struct PairTable {
    word: Vec<char>,
    sure: Vec<[usize; 4]>,
    maybe: Vec<[usize; 4]>,
    space: u64,
}

impl PairTable {
    fn build(spec: &LanguageSpec, word: &str, b: NdBounds) -> Result<PairTable, PairError> {
        let w = chars(word);
        let n = w.len();
        let mut t = PairTable { word: w, sure: Vec::new(), maybe: Vec::new(), space: 0 };
        for c0 in 0..=n {
            for c1 in c0 + 1..=n {
                for c2 in c1..=n {
                    for c3 in c2 + 1..=n {
                        // A nondegenerate pair is nonempty on both sides.
                        t.space += 1;
                        let k = [c0, c1, c2, c3];
                        let f = five(&t.word, k);
                        if !pump_test(spec, &f, b.i_max)?.passes {
                            continue;
                        }
                        let mut grid = vec![vec![false; b.grid + 1]; b.grid + 1];
                        for (i, row) in grid.iter_mut().enumerate() {
                            for (j, cell) in row.iter_mut().enumerate() {
                                *cell = spec.member(&f.pumped(i, j), None)?;
                            }
                        }
                        match grid_verdict(&grid) {
                            Tri::Yes => t.sure.push(k),
                            Tri::Inconclusive => t.maybe.push(k),
                            Tri::No => {}
                        }
                    }
                }
            }
        }
        Ok(t)
    }

    fn candidates(&self, strict: bool) -> impl Iterator<Item = &[usize; 4]> {
        self.sure.iter().chain(self.maybe.iter().filter(move |_| !strict))
    }

    fn find(&self, strict: bool, pred: impl Fn(&[usize; 4]) -> bool) -> Option<[usize; 4]> {
        self.candidates(strict).find(|k| pred(k)).copied()
    }

    fn factorization(&self, k: [usize; 4]) -> Factorization5 {
        five(&self.word, k)
    }
}

/// Evaluates a condition under the strict reading (only pairs with
/// conclusive nondegeneracy) and the loose one (inconclusive pairs too).
fn tri_state(mut eval: impl FnMut(bool) -> Option<Vec<Factorization5>>) -> Verdict {
    if let Some(w) = eval(true) {
        Verdict::HoldsWithWitness(w)
    } else if eval(false).is_some() {
        Verdict::Inconclusive
    } else {
        Verdict::FailsExhaustively
    }
}

/// Bounded evaluation of conditions (1)–(5) of the second lemma for fixed `x′, y, z`.
pub fn lemma2_check(
    spec: &LanguageSpec,
    xp: &str,
    y: &str,
    z: &str,
    bounds: NdBounds,
) -> Result<ConditionReport, PairError> {
    if xp.is_empty() || y.is_empty() || z.is_empty() {
        return Err(PairError::PremiseViolated("x′, y and z must be nonempty".into()));
    }
    check_members(spec, &[format!("{xp}{y}"), format!("{xp}{z}")])?;
    let l = xp.chars().count();
    let ty = PairTable::build(spec, &format!("{xp}{y}"), bounds)?;
    let tz = PairTable::build(spec, &format!("{xp}{z}"), bounds)?;
    let t = [&ty, &tz];
    let mut verdicts = Vec::new();

    // (1) holds when one of the strings has no nondegenerate pair at all.
    let none = |tb: &PairTable, strict: bool| {
        if strict {
            tb.sure.is_empty() && tb.maybe.is_empty()
        } else {
            tb.sure.is_empty()
        }
    };
    let c1 = if none(&ty, true) || none(&tz, true) {
        Verdict::HoldsWithWitness(Vec::new())
    } else if none(&ty, false) || none(&tz, false) {
        Verdict::Inconclusive
    } else {
        Verdict::FailsExhaustively
    };
    verdicts.push((Condition::L2C1, c1));

    let inside = |k: &[usize; 4]| k[3] <= l;
    let crossing = |k: &[usize; 4]| k[1] <= l && l <= k[2];
    let both = |p: &dyn Fn(&[usize; 4]) -> bool, strict: bool| {
        let a = ty.find(strict, p)?;
        let b = tz.find(strict, p)?;
        Some(vec![ty.factorization(a), tz.factorization(b)])
    };
    verdicts.push((Condition::L2C2, tri_state(|s| both(&inside, s))));
    verdicts.push((Condition::L2C3, tri_state(|s| both(&crossing, s))));

    let any_u = |p: &dyn Fn(&[usize; 4]) -> bool, strict: bool| {
        t.iter().find_map(|tb| tb.find(strict, p).map(|k| vec![tb.factorization(k)]))
    };
    // (4a) (x₂u₁, u₃): the left side straddles the border, the right side lies in u.
    let c4a = |k: &[usize; 4]| k[0] < l && l < k[1];
    // (4b) (x₂, x₄u₁): the left side lies in x′, the right side straddles the border.
    let c4b = |k: &[usize; 4]| k[1] <= l && k[2] < l && l < k[3];
    let c4c = |k: &[usize; 4]| k[0] >= l;
    verdicts.push((Condition::L2C4a, tri_state(|s| any_u(&c4a, s))));
    verdicts.push((Condition::L2C4b, tri_state(|s| any_u(&c4b, s))));
    verdicts.push((Condition::L2C4c, tri_state(|s| any_u(&c4c, s))));

    if y == z {
        verdicts.push((Condition::L2C5a, Verdict::HoldsWithWitness(Vec::new())));
        verdicts.push((Condition::L2C5b, Verdict::HoldsWithWitness(Vec::new())));
    } else {
        // u ranges over {y, z}; `a` is the table of x′u, `b` that of x′u⁽ᵒᵖ⁾.
        let combos = |compat: &dyn Fn(&[usize; 4], &[usize; 4]) -> bool, strict: bool| {
            for (a, b) in [(&ty, &tz), (&tz, &ty)] {
                for ka in a.candidates(strict).filter(|k| crossing(k)) {
                    for kb in b.candidates(strict).filter(|k| inside(k)) {
                        if compat(ka, kb) {
                            return Some(vec![a.factorization(*ka), b.factorization(*kb)]);
                        }
                    }
                }
            }
            None
        };
        // (5a) (x₂,u₂) in x′u and (x₄,x₆) in x′u⁽ᵒᵖ⁾ with x₂ left of x₄.
        let c5a = |ka: &[usize; 4], kb: &[usize; 4]| ka[1] <= kb[0];
        // (5b) (x₅x₆,u₂) with (x₂,x₄x₅), or (x₆,u₂) with (x₂,x₄).
        let c5b = |ka: &[usize; 4], kb: &[usize; 4]| {
            let shared = kb[1] <= kb[2] && kb[2] <= ka[0] && ka[0] <= kb[3] && kb[3] <= ka[1];
            let alt = kb[3] <= ka[0];
            shared || alt
        };
        verdicts.push((Condition::L2C5a, tri_state(|s| combos(&c5a, s))));
        verdicts.push((Condition::L2C5b, tri_state(|s| combos(&c5b, s))));
    }
    Ok(ConditionReport {
        x_prime: xp.into(),
        y: y.into(),
        z: z.into(),
        bounds,
        verdicts,
        space: [ty.space, tz.space],
    })
}

/// A pair of witness words `x′y`, `x′z` from a refutation family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RefutationCase {
    pub j1: usize,
    pub j2: usize,
    pub x_prime: String,
    pub y: String,
    pub z: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CaseOutcome {
    Lemma1 { condition1: SearchOutcome, condition2: SearchOutcome },
    Lemma2(ConditionReport),
}

impl CaseOutcome {
    pub fn refuted(&self) -> bool {
        match self {
            CaseOutcome::Lemma1 { condition1, condition2 } => condition1.witness.is_none() && condition2.witness.is_none(),
            CaseOutcome::Lemma2(r) => r.refuted(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RefutationReport {
    pub target: String,
    pub c: usize,
    pub i_max: usize,
    pub n: usize,
    pub cases: Vec<(RefutationCase, CaseOutcome)>,
}

impl RefutationReport {
    /// Every pair of witness words defeats every condition.
    pub fn refuted(&self) -> bool {
        !self.cases.is_empty() && self.cases.iter().all(|(_, o)| o.refuted())
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum RefuteError {
    #[error(transparent)]
    Zoo(#[from] ZooError),
    #[error(transparent)]
    Pair(#[from] PairError),
}

fn rep(c: char, k: usize) -> String {
    std::iter::repeat_n(c, k).collect()
}

/// Refutation targets: `lunion-<d>`, `ld-le-<d>`, `pal-<d>` (first lemma) and
/// `npal-sharp-<d>` (second lemma).
pub const REFUTATION_TARGETS: [&str; 4] = ["lunion", "ld-le", "pal", "npal-sharp"];

/// The language the lemma is applied to and the witness pairs for block size `n`.
pub fn refutation_cases(target: &str, n: usize) -> Result<(LanguageSpec, Vec<RefutationCase>), ZooError> {
    let (family, d) = parse_name(target);
    if !REFUTATION_TARGETS.contains(&family) {
        return Err(ZooError::Unknown(target.to_string()));
    }
    let d = d.ok_or_else(|| ZooError::UnsupportedParams(format!("{target} needs a parameter")))?;
    if !(2..=4).contains(&d) && !(family == "pal" && d == 1) {
        return Err(ZooError::UnsupportedParams(format!("{target}: parameter out of range")));
    }
    if n == 0 {
        return Err(ZooError::UnsupportedParams("n must be positive".into()));
    }
    let spec_of = |name: String| -> Result<LanguageSpec, ZooError> {
        build_entry(&name)?.spec.ok_or(ZooError::NoSpec(name))
    };
    let mut cases = Vec::new();
    let spec = match family {
        "lunion" => {
            for j in 1..=d {
                for k in j + 1..=d {
                    let x_prime = format!("{}{}", rep('a', n), rep('b', j * n - 1));
                    cases.push(RefutationCase { j1: j, j2: k, x_prime, y: "b".into(), z: rep('b', (k - j) * n + 1) });
                }
            }
            spec_of(format!("lunion-{d}"))?
        }
        "ld-le" => {
            let x: String = (1..=d).map(|i| rep(A_LETTERS[i - 1], i * n)).collect();
            let tail = |from: usize, short: Option<usize>| -> String {
                (from..=d).map(|i| rep(B_LETTERS[i - 1], i * n - usize::from(Some(i) == short))).collect()
            };
            for j1 in 1..=d {
                for j2 in j1 + 1..=d {
                    let head: String = (1..=j1).map(|i| rep(B_LETTERS[i - 1], i * n - usize::from(i == j1))).collect();
                    let x_prime = format!("{x}{head}");
                    let y = tail(j1 + 1, None);
                    let z = format!("{}{}", B_LETTERS[j1 - 1], tail(j1 + 1, Some(j2)));
                    cases.push(RefutationCase { j1, j2, x_prime, y, z });
                }
            }
            spec_of(format!("ld-le-prime-{d}"))?
        }
        "pal" => {
            let blocks = |k: usize| pal_block_string(n, k).chars().collect::<Vec<char>>();
            for i in 1..=d + 1 {
                for j in i + 1..=d + 1 {
                    let (wi, wj) = (blocks(i), blocks(j));
                    let cut = (i + 1) * n;
                    cases.push(RefutationCase {
                        j1: i,
                        j2: j,
                        x_prime: wi[..cut].iter().collect(),
                        y: wi[cut..].iter().collect(),
                        z: wj[cut..].iter().collect(),
                    });
                }
            }
            LanguageSpec::new(&['0', '1'], Node::predicate("Pal", zoo::lang::pal)).expect("predicate leaves carry no alphabet")
        }
        _ => {
            let ws: Vec<String> = (1..=d).map(|i| sharp_word(n, i)).collect();
            let rev = |s: &str| s.chars().rev().collect::<String>();
            let ss = rep('1', n);
            let vs: Vec<String> = ws.iter().map(|w| format!("{}{ss}", rev(w))).collect();
            for j1 in 1..=d {
                for j2 in j1 + 1..=d {
                    let mut x_prime: String = ws.iter().map(|w| format!("{w}#")).collect();
                    for v in &vs[..j1 - 1] {
                        x_prime.push_str(v);
                        x_prime.push('#');
                    }
                    x_prime.push_str(&rev(&ws[j1 - 1]));
                    let y: String = vs[j1..].iter().map(|v| format!("#{v}")).collect();
                    let rest: Vec<String> =
                        (j1 + 1..=d).map(|i| if i == j2 { rev(&ws[i - 1]) } else { vs[i - 1].clone() }).collect();
                    let z = format!("{ss}#{}", rest.join("#"));
                    cases.push(RefutationCase { j1, j2, x_prime, y, z });
                }
            }
            spec_of(format!("npal-sharp-prime-{d}"))?
        }
    };
    Ok((spec, cases))
}

/// Runs the exhaustive bounded searches on every witness pair of `target`.
/// `n` defaults to `c + 1` (`2c` for `pal`).
pub fn refute(target: &str, c: usize, i_max: usize, n: Option<usize>) -> Result<RefutationReport, RefuteError> {
    let (family, _) = parse_name(target);
    let n = n.unwrap_or(if family == "pal" { 2 * c } else { c + 1 });
    let (spec, cases) = refutation_cases(target, n)?;
    let mut out = Vec::new();
    for case in cases {
        let outcome = if family == "npal-sharp" {
            CaseOutcome::Lemma2(lemma2_check(&spec, &case.x_prime, &case.y, &case.z, NdBounds { i_max, grid: i_max })?)
        } else {
            CaseOutcome::Lemma1 {
                condition1: lemma1_check_condition1(&spec, &case.x_prime, &case.y, &case.z, c, i_max)?,
                condition2: lemma1_check_condition2(&spec, &case.x_prime, &case.y, &case.z, c, i_max)?,
            }
        };
        out.push((case, outcome));
    }
    Ok(RefutationReport { target: target.to_string(), c, i_max, n, cases: out })
}

/// The constant `2^(6|Q|⁶)` from the proof of the first lemma; informational only.
pub fn pumping_constant_upper_bound(machine: &Dpda) -> BigUint {
    pumping_constant_for_states(machine.state_count())
}

pub fn pumping_constant_for_states(q: usize) -> BigUint {
    let q = q as u64;
    BigUint::from(1u8) << (6 * q.pow(6))
}
