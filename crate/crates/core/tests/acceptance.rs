//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero when any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use dcfl_lab::automaton::anbn;
use dcfl_lab::bounded::{mu_bounded_member, pal_dpda_family, size_table};
use dcfl_lab::history::{classify_block, is_turn, turn_partition, turning_points, Block, HistoryError};
use dcfl_lab::lda::{anbn_lda, run_lda, visit_discipline_check};
use dcfl_lab::normal_forms::{epsilon_enhance, induce};
use dcfl_lab::pairs::{certify_run, SweepStats};
use dcfl_lab::pumping::{lemma1_witness_search, refute, CaseOutcome, Lemma1Instance, RefutationReport};
use dcfl_lab::strings::all_strings;
use dcfl_lab::zoo::{all_machines, build_entry, cross_validate};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn criterion1() -> Verdict {
    let names = ["labc", "ld-2", "ld-3", "ld-le-2", "lunion-2", "lunion-3", "co-pal", "hibbard-2", "hibbard-3", "dup"];
    let mut strings = 0;
    let mut bad = Vec::new();
    for name in names {
        let entry = build_entry(name).expect("zoo entry");
        let r = cross_validate(&entry, entry.validation_len()).expect("entry has a spec");
        strings += r.strings;
        if !r.agrees() {
            bad.push(format!("{name}: {} disagreements {:?} errors {:?}", r.disagreements, r.examples, r.errors));
        }
    }
    verdict(bad.is_empty(), format!("{} entries, {strings} strings, mismatches: {bad:?}", names.len()))
}

/// Height profiles recorded during the sweep, deduplicated.
type Profiles = BTreeSet<Vec<usize>>;

fn criterion2(profiles: &mut Profiles) -> Verdict {
    let mut total = SweepStats::default();
    let mut errors = Vec::new();
    for (name, m) in all_machines() {
        let t = Instant::now();
        let enhanced = epsilon_enhance(&m).expect("zoo machines enhance");
        let mut stats = SweepStats::default();
        for x in all_strings(m.input_alphabet(), 8) {
            match certify_run(&m, &enhanced, &x, 8, 5, &mut stats) {
                Ok(h) => {
                    profiles.insert(h.heights());
                }
                Err(e) => errors.push(format!("{name} on {x:?}: {e}")),
            }
        }
        eprintln!(
            "  {name}: {} inputs, {} good pairs, {} single blocks, {} failures ({:.1}s)",
            stats.inputs,
            stats.good_pairs,
            stats.single_blocks,
            stats.failures.len(),
            t.elapsed().as_secs_f64()
        );
        total.inputs += stats.inputs;
        total.good_pairs += stats.good_pairs;
        total.single_blocks += stats.single_blocks;
        total.failures.extend(stats.failures);
    }
    let shown: Vec<_> = total.failures.iter().take(5).collect();
    verdict(
        total.failures.is_empty() && errors.is_empty(),
        format!(
            "{} runs, {} good pairs, {} single blocks, {} failures {shown:?}, {} errors {:?}",
            total.inputs,
            total.good_pairs,
            total.single_blocks,
            total.failures.len(),
            errors.len(),
            errors.iter().take(5).collect::<Vec<_>>()
        ),
    )
}

fn criterion3() -> Verdict {
    let mut checked = 0u64;
    let mut bad = Vec::new();
    for (name, m) in all_machines() {
        let enhanced = epsilon_enhance(&m).expect("zoo machines enhance");
        for x in all_strings(m.input_alphabet(), 8) {
            checked += 1;
            let ok = (|| -> Result<bool, String> {
                let xh = induce(&m, &x).map_err(|e| e.to_string())?;
                let plain = m.accepts(&x, None).map_err(|e| e.to_string())?;
                let enh = enhanced.accepts_chars(&xh.symbols, None).map_err(|e| e.to_string())?;
                Ok(plain == enh && xh.strip() == x)
            })();
            match ok {
                Ok(true) => {}
                Ok(false) => bad.push(format!("{name} on {x:?}")),
                Err(e) => bad.push(format!("{name} on {x:?}: {e}")),
            }
        }
    }
    verdict(bad.is_empty(), format!("{checked} runs, {} mismatches {:?}", bad.len(), bad.iter().take(5).collect::<Vec<_>>()))
}

fn refutation_detail(r: &RefutationReport) -> String {
    let defeated = r.cases.iter().filter(|(_, o)| o.refuted()).count();
    let mut s = format!("{}: n={}, {} witness pairs, {defeated} with zero valid factorizations", r.target, r.n, r.cases.len());
    for (case, outcome) in &r.cases {
        if let CaseOutcome::Lemma1 { condition1, condition2 } = outcome {
            if let Some(w) = condition1.witness.as_ref().or(condition2.witness.as_ref()) {
                let fs: Vec<String> = w.factorizations.iter().map(|f| f.to_string()).collect();
                s.push_str(&format!("; pair ({},{}) admits {:?} via {fs:?}", case.j1, case.j2, w.which));
            }
        }
    }
    s
}

fn criterion4() -> Verdict {
    let report = match refute("lunion-2", 4, 3, Some(5)) {
        Ok(r) => r,
        Err(e) => return verdict(false, format!("refutation failed to run: {e}")),
    };
    let entry = build_entry("lunion-2").expect("zoo entry");
    let inst = Lemma1Instance {
        spec: entry.spec.clone().expect("spec"),
        c: 4,
        x: "a".repeat(5),
        ys: vec!["b".repeat(5), "b".repeat(10), format!("a{}", "b".repeat(6))],
        i_max: 3,
    };
    let positive = match lemma1_witness_search(&inst) {
        Ok(s) => s,
        Err(e) => return verdict(false, format!("witness search failed: {e}")),
    };
    let found = positive.found.is_some();
    verdict(
        report.refuted() && found,
        format!(
            "{}; positive search: {} working pairs {:?}, witness {}",
            refutation_detail(&report),
            positive.working_pairs.len(),
            positive.working_pairs,
            if found { "found" } else { "missing" }
        ),
    )
}

fn criterion5() -> Verdict {
    match refute("pal-1", 4, 3, Some(4)) {
        Ok(r) => verdict(r.refuted(), refutation_detail(&r)),
        Err(e) => verdict(false, format!("refutation failed to run: {e}")),
    }
}

fn criterion6() -> Verdict {
    let family = pal_dpda_family();
    let pal = build_entry("pal").expect("zoo entry");
    let mut checked = 0;
    let mut bad = Vec::new();
    for w in all_strings(&['0', '1'], 10) {
        checked += 1;
        match mu_bounded_member(&family, &w, None) {
            Ok(got) if got == pal.member(&w) => {}
            Ok(got) => bad.push(format!("{w:?}: {got}")),
            Err(e) => bad.push(format!("{w:?}: {e}")),
        }
    }
    let rows = size_table(&family, 32);
    eprintln!("  {:>3} {:>7} {:>12} {:>12}", "n", "states", "des", "bound");
    for r in &rows {
        eprintln!("  {:>3} {:>7} {:>12} {:>12}{}", r.n, r.states, r.des, r.bound, if r.within { "" } else { "  EXCEEDS" });
    }
    let over = rows.iter().filter(|r| !r.within).count();
    verdict(
        bad.is_empty() && over == 0,
        format!("{checked} strings, {} disagreements {:?}; {over} of {} sizes over the bound", bad.len(), bad.iter().take(5).collect::<Vec<_>>(), rows.len()),
    )
}

fn criterion7(profiles: &Profiles) -> Verdict {
    let (mut partitions, mut telescope_bad, mut turn_bad, mut no_turn) = (0u64, 0u64, 0u64, 0u64);
    let (mut flat, mut convex, mut flat_bad, mut convex_bad) = (0u64, 0u64, 0u64, 0u64);
    let mut example = None;
    for h in profiles {
        if h.len() >= 2 {
            let range = Block::new(0, h.len() - 1);
            match turn_partition(h, range) {
                Ok(p) => {
                    partitions += 1;
                    let sum: i64 = p.turns.iter().map(|t| t.gain).sum();
                    let contiguous = p.turns.first().map(|t| t.block.start) == Some(range.start)
                        && p.turns.last().map(|t| t.block.end) == Some(range.end)
                        && p.turns.windows(2).all(|w| w[0].block.end == w[1].block.start);
                    if sum != p.true_gain || !contiguous {
                        telescope_bad += 1;
                    }
                    if p.turns.iter().any(|t| !is_turn(h, t.block)) {
                        turn_bad += 1;
                    }
                }
                Err(HistoryError::NoTurningPoint) if turning_points(h).is_empty() => no_turn += 1,
                Err(_) => telescope_bad += 1,
            }
        }
        for t1 in 0..h.len() {
            for t2 in t1 + 1..h.len().min(t1 + 9) {
                let s = classify_block(h, Block::new(t1, t2));
                if s.flat {
                    flat += 1;
                    flat_bad += u64::from(!s.pseudo_convex);
                } else if s.convex {
                    convex += 1;
                    if !s.pseudo_convex {
                        convex_bad += 1;
                        example.get_or_insert_with(|| h[t1..=t2].to_vec());
                    }
                }
            }
        }
    }
    verdict(
        telescope_bad == 0 && turn_bad == 0 && flat_bad == 0 && convex_bad == 0,
        format!(
            "{} profiles, {partitions} partitions ({no_turn} without turning points): {telescope_bad} telescoping and \
             {turn_bad} turn violations; flat blocks {flat_bad}/{flat} and non-flat convex blocks {convex_bad}/{convex} \
             not pseudo-convex{}",
            profiles.len(),
            example.map(|e| format!(", e.g. heights {e:?}")).unwrap_or_default()
        ),
    )
}

fn criterion8() -> Verdict {
    let lda = anbn_lda();
    let dpda = anbn();
    let mut checked = 0;
    let mut bad = Vec::new();
    for w in all_strings(&['a', 'b'], 10) {
        checked += 1;
        match (run_lda(&lda, &w, None), dpda.accepts(&w, None)) {
            (Ok(out), Ok(want)) => {
                if out.accepted != want {
                    bad.push(format!("{w:?}: lda {} dpda {want}", out.accepted));
                } else if !visit_discipline_check(&out.trace, lda.limit) {
                    bad.push(format!("{w:?}: visit discipline"));
                }
            }
            (a, b) => bad.push(format!("{w:?}: {:?} {:?}", a.err(), b.err())),
        }
    }
    verdict(bad.is_empty(), format!("{checked} strings, {} problems {:?}", bad.len(), bad.iter().take(5).collect::<Vec<_>>()))
}

fn main() -> ExitCode {
    let mut profiles = Profiles::new();
    let mut all_pass = true;
    let mut report = |n: usize, title: &str, f: &mut dyn FnMut() -> Verdict| {
        let t = Instant::now();
        let v = f();
        all_pass &= v.pass;
        println!(
            "criterion {n} {title}: {} ({:.1}s) {}",
            if v.pass { "PASS" } else { "FAIL" },
            t.elapsed().as_secs_f64(),
            v.detail
        );
    };
    report(1, "zoo cross-validation", &mut criterion1);
    report(2, "good-pair soundness sweep", &mut || criterion2(&mut profiles));
    report(3, "epsilon-enhancement equivalence", &mut criterion3);
    report(4, "two-union refutation", &mut criterion4);
    report(5, "block-string refutation", &mut criterion5);
    report(6, "pal family", &mut criterion6);
    report(7, "stack-history geometry", &mut || criterion7(&profiles));
    report(8, "2-lda", &mut criterion8);
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
