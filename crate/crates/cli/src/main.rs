use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use dcfl_lab::automaton::Dpda;
use dcfl_lab::bounded::{mu_bounded_member, pal_dpda_family, size_table, DpdaFamily};
use dcfl_lab::history::{features, record_history, turn_partition, Block};
use dcfl_lab::lda::{run_lda, validate_lda, Lda};
use dcfl_lab::language::LanguageSpec;
use dcfl_lab::normal_forms::{check_ideal_shape, epsilon_enhance, induce};
use dcfl_lab::pairs::{pump_with, Factorization5};
use dcfl_lab::pumping::{refute, CaseOutcome};
use dcfl_lab::zoo;

const BUDGET_VAR: &str = "DCFL_LAB_BUDGET";

#[derive(Parser)]
#[command(name = "dcfl-lab", version, about = "Experiments with deterministic pushdown automata and their stack histories")]
struct Cli {
    /// Print the structured report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a machine file on an input (`ε` for the empty input).
    Run {
        machine: PathBuf,
        input: String,
        #[arg(long)]
        trace: bool,
    },
    /// Stack-height profile, features and turn partition of the enhanced run.
    Analyze { machine: PathBuf, input: String },
    /// Pump test of a factorization `u,x,v,y,z` against a machine file or zoo entry.
    Pump {
        spec: String,
        factorization: String,
        #[arg(long, default_value_t = 5)]
        imax: usize,
    },
    /// Exhaustive condition searches on the witness words of a zoo family.
    Refute {
        target: String,
        #[arg(long, default_value_t = 4)]
        c: usize,
        #[arg(long, default_value_t = 3)]
        imax: usize,
        /// Block size of the witness words.
        #[arg(long)]
        n: Option<usize>,
    },
    #[command(subcommand)]
    Zoo(ZooCmd),
    #[command(subcommand)]
    Lda(LdaCmd),
    #[command(subcommand)]
    Family(FamilyCmd),
}

#[derive(Subcommand)]
enum ZooCmd {
    List,
    /// Compare predicate and decomposition on every string up to a length.
    Validate {
        name: String,
        #[arg(long)]
        max_len: Option<usize>,
    },
    Witness {
        name: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
    /// Write every DPDA leaf of an entry as a machine file.
    Export {
        name: String,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum LdaCmd {
    Run {
        machine: PathBuf,
        input: String,
        #[arg(long)]
        trace: bool,
    },
    Validate { machine: PathBuf },
}

#[derive(Subcommand)]
enum FamilyCmd {
    /// μ-bounded membership.
    Member { family: String, input: String },
    /// Description sizes against the declared bound.
    Size {
        family: String,
        #[arg(long, default_value_t = 32)]
        max: usize,
    },
}

struct Report {
    parameters: Value,
    verdict: String,
    body: Value,
    text: Vec<String>,
    code: u8,
}

impl Report {
    fn new(verdict: impl Into<String>, code: u8) -> Self {
        Report { parameters: json!({}), verdict: verdict.into(), body: json!({}), text: Vec::new(), code }
    }
    fn params(mut self, p: Value) -> Self {
        self.parameters = p;
        self
    }
    fn body(mut self, b: Value) -> Self {
        self.body = b;
        self
    }
    fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }
}

type Outcome = Result<Report, String>;

fn budget() -> Result<Option<u64>, String> {
    match std::env::var(BUDGET_VAR) {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| format!("{BUDGET_VAR} must be a positive integer, got {v:?}")),
        Err(_) => Ok(None),
    }
}

fn input_arg(s: &str) -> String {
    if s == "ε" {
        String::new()
    } else {
        s.to_string()
    }
}

fn load_machine(path: &Path) -> Result<Dpda, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Dpda::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_lda(path: &Path) -> Result<Lda, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Lda::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn cmd_run(machine: &Path, input: &str, trace: bool) -> Outcome {
    let m = load_machine(machine)?;
    let out = m.run(input, budget()?).map_err(|e| e.to_string())?;
    let verdict = if out.accepted { "accept" } else { "reject" };
    let mut r = Report::new(verdict, if out.accepted { 0 } else { 1 }).params(json!({ "machine": machine, "input": input }));
    r.line(format!("{verdict} in state {} after {} steps", m.state_name(out.final_state), out.steps));
    if trace {
        for mv in &out.trace {
            r.line(format!(
                "  {} --{} / {}--> {} push {:?} (cell {}, height {})",
                m.state_name(mv.from),
                mv.read,
                mv.top,
                m.state_name(mv.to),
                mv.push.iter().collect::<String>(),
                mv.position,
                mv.height_after
            ));
        }
    }
    let mut body = json!({ "final_state": m.state_name(out.final_state), "steps": out.steps });
    if trace {
        body["trace"] = to_value(&out.trace);
    }
    Ok(r.body(body))
}

fn cmd_analyze(machine: &Path, input: &str) -> Outcome {
    let m = load_machine(machine)?;
    let params = json!({ "machine": machine, "input": input });
    let shape = check_ideal_shape(&m);
    if !shape.is_ideal() {
        let mut r = Report::new("not in ideal shape", 2).params(params).body(json!({ "ideal_shape": to_value(&shape.violations) }));
        for v in &shape.violations {
            r.line(format!("  {v:?}"));
        }
        return Ok(r);
    }
    let enhanced = epsilon_enhance(&m).map_err(|e| e.to_string())?;
    let xh = induce(&m, input).map_err(|e| e.to_string())?;
    let h = record_history(&enhanced, &xh).map_err(|e| e.to_string())?;
    let heights = h.heights();
    let feats = features(&heights);
    let partition = turn_partition(&heights, Block::new(0, h.last())).ok();
    let accepted = enhanced.is_accepting(*h.states.last().expect("histories are nonempty"));
    let mut r = Report::new(if accepted { "accept" } else { "reject" }, 0).params(params);
    r.line(format!("enhanced input {:?}", xh.as_string()));
    r.line(format!("{:>4} {:>6}  {:<12} stack", "t", "height", "state"));
    for (t, height) in heights.iter().enumerate() {
        r.line(format!("{t:>4} {height:>6}  {:<12} {}", enhanced.state_name(h.states[t]), h.stack_top_first(t)));
    }
    r.line(format!("peaks {:?}, hills {}, plateaus {}", feats.peaks, feats.hills.len(), feats.plateaus.len()));
    match &partition {
        Some(p) => r.line(format!("{} turns, true gain {}", p.turns.len(), p.true_gain)),
        None => r.line("no turning point"),
    }
    Ok(r.body(json!({
        "enhanced_input": xh.as_string(),
        "heights": heights,
        "features": to_value(&feats),
        "turn_partition": to_value(&partition),
    })))
}

fn load_spec(spec: &str) -> Result<LanguageSpec, String> {
    let path = Path::new(spec);
    if path.exists() {
        let m = load_machine(path)?;
        return Ok(LanguageSpec::single(&path.file_stem().unwrap_or_default().to_string_lossy(), m));
    }
    let entry = zoo::build_entry(spec).map_err(|e| e.to_string())?;
    entry.spec.ok_or_else(|| format!("{spec} has no decomposition into machines"))
}

fn cmd_pump(spec: &str, factorization: &str, imax: usize) -> Outcome {
    let language = load_spec(spec)?;
    let f = Factorization5::parse(factorization).map_err(|e| format!("factorization {factorization:?}: {e}"))?;
    let b = budget()?;
    if !language.member(&f.word(), b).map_err(|e| e.to_string())? {
        return Err(format!("{:?} is not in the language", f.word()));
    }
    let res = pump_with(|w| language.member(w, b), &f, imax, true).map_err(|e| e.to_string())?;
    let verdict = if res.passes { "passes" } else { "fails" };
    let mut r = Report::new(verdict, if res.passes { 0 } else { 1 })
        .params(json!({ "spec": spec, "factorization": to_value(&f), "imax": imax }));
    match res.first_failure {
        None => r.line(format!("u x^i v y^i z stays in the language for i = 0..={imax}")),
        Some(i) => r.line(format!("leaves the language at i = {i}: {:?}", f.pumped(i, i))),
    }
    Ok(r.body(json!({ "first_failure": res.first_failure })))
}

fn cmd_refute(target: &str, c: usize, imax: usize, n: Option<usize>) -> Outcome {
    let report = refute(target, c, imax, n).map_err(|e| e.to_string())?;
    let refuted = report.refuted();
    let mut space = 0u64;
    let mut r = Report::new(if refuted { "no witness found" } else { "witness found" }, if refuted { 0 } else { 1 })
        .params(json!({ "target": target, "c": c, "imax": imax, "n": report.n }));
    for (case, outcome) in &report.cases {
        let (found, s) = match outcome {
            CaseOutcome::Lemma1 { condition1, condition2 } => {
                (condition1.witness.is_some() || condition2.witness.is_some(), condition1.space + condition2.space)
            }
            CaseOutcome::Lemma2(rep) => (!rep.refuted(), rep.space.iter().sum()),
        };
        space += s;
        r.line(format!(
            "  j1={} j2={} x'={} y={} z={}: {} ({s} factorizations)",
            case.j1,
            case.j2,
            case.x_prime,
            case.y,
            case.z,
            if found { "condition holds" } else { "no condition holds" }
        ));
    }
    if refuted {
        r.line(format!("no witness found; search exhausted {space} factorizations"));
    }
    Ok(r.body(json!({ "factorizations": space, "report": to_value(&report) })))
}

fn cmd_zoo(cmd: &ZooCmd) -> Outcome {
    match cmd {
        ZooCmd::List => {
            let names = zoo::list();
            let mut r = Report::new(format!("{} entries", names.len()), 0);
            for (family, range, origin) in zoo::FAMILIES {
                let params = range.map(|(a, b)| format!("-<{a}..{b}>")).unwrap_or_default();
                r.line(format!("{family}{params}: {origin}"));
            }
            Ok(r.body(json!({ "entries": names })))
        }
        ZooCmd::Validate { name, max_len } => {
            let entry = zoo::build_entry(name).map_err(|e| e.to_string())?;
            let len = max_len.unwrap_or_else(|| entry.validation_len());
            let rep = zoo::cross_validate(&entry, len).map_err(|e| e.to_string())?;
            let ok = rep.agrees();
            let mut r = Report::new(if ok { "agree" } else { "disagree" }, if ok { 0 } else { 1 })
                .params(json!({ "name": name, "max_len": len }));
            r.line(format!("{} strings, {} disagreements, {} errors", rep.strings, rep.disagreements, rep.errors.len()));
            for (w, want) in &rep.examples {
                r.line(format!("  {w:?}: predicate says {want}"));
            }
            Ok(r.body(to_value(&rep)))
        }
        ZooCmd::Witness { name, n } => {
            let ws = zoo::witness_strings(name, *n).map_err(|e| e.to_string())?;
            let mut r = Report::new(format!("{} strings", ws.len()), 0).params(json!({ "name": name, "n": n }));
            for w in &ws {
                let m = w.member.map(|b| if b { " (member)" } else { " (non-member)" }).unwrap_or("");
                r.line(format!("{} = {}{m}", w.label, w.word));
            }
            Ok(r.body(json!({ "witnesses": to_value(&ws) })))
        }
        ZooCmd::Export { name, out } => {
            let entry = zoo::build_entry(name).map_err(|e| e.to_string())?;
            let files = zoo::export(&entry).map_err(|e| e.to_string())?;
            std::fs::create_dir_all(out).map_err(|e| format!("{}: {e}", out.display()))?;
            let mut r = Report::new(format!("{} files", files.len()), 0).params(json!({ "name": name, "out": out }));
            let mut written = Vec::new();
            for (file, text) in files {
                let path = out.join(file);
                std::fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display()))?;
                r.line(path.display().to_string());
                written.push(path);
            }
            Ok(r.body(json!({ "files": written })))
        }
    }
}

fn cmd_lda(cmd: &LdaCmd) -> Outcome {
    match cmd {
        LdaCmd::Run { machine, input, trace } => {
            let m = load_lda(machine)?;
            let input = input_arg(input);
            let out = run_lda(&m, &input, budget()?).map_err(|e| e.to_string())?;
            let verdict = if out.accepted { "accept" } else { "reject" };
            let mut r = Report::new(verdict, if out.accepted { 0 } else { 1 })
                .params(json!({ "machine": machine, "input": input }));
            r.line(format!("{verdict} in state {} after {} steps", out.final_state, out.steps));
            if *trace {
                for s in &out.trace {
                    r.line(format!("  {:<8} head {:>3} {} -> {} {:+}  {}", s.state, s.head, s.read, s.write, s.dir, s.tape));
                }
            }
            let mut body = json!({ "final_state": out.final_state, "steps": out.steps });
            if *trace {
                body["trace"] = to_value(&out.trace);
            }
            Ok(r.body(body))
        }
        LdaCmd::Validate { machine } => {
            let m = load_lda(machine)?;
            let rep = validate_lda(&m);
            let ok = rep.is_valid();
            let mut r = Report::new(if ok { "valid" } else { "invalid" }, if ok { 0 } else { 1 })
                .params(json!({ "machine": machine, "limit": m.limit }));
            for v in &rep.violations {
                r.line(format!("  {v:?}"));
            }
            Ok(r.body(to_value(&rep)))
        }
    }
}

fn family(name: &str) -> Result<DpdaFamily, String> {
    match name {
        "pal" => Ok(pal_dpda_family()),
        _ => Err(format!("unknown family {name:?}; available: pal")),
    }
}

fn cmd_family(cmd: &FamilyCmd) -> Outcome {
    match cmd {
        FamilyCmd::Member { family: name, input } => {
            let f = family(name)?;
            let input = input_arg(input);
            let member = mu_bounded_member(&f, &input, budget()?).map_err(|e| e.to_string())?;
            let mu = (f.mu)(input.chars().count());
            let mut r = Report::new(if member { "member" } else { "non-member" }, if member { 0 } else { 1 })
                .params(json!({ "family": name, "input": input }));
            r.line(format!("checked machines 0..={mu}"));
            Ok(r.body(json!({ "mu": mu })))
        }
        FamilyCmd::Size { family: name, max } => {
            let f = family(name)?;
            let rows = size_table(&f, *max);
            let ok = rows.iter().all(|r| r.within);
            let mut r = Report::new(if ok { "within bound" } else { "exceeds bound" }, if ok { 0 } else { 1 })
                .params(json!({ "family": name, "max": max }));
            r.line(format!("{:>4} {:>7} {:>12} {:>12}", "n", "states", "des", "bound"));
            for row in &rows {
                r.line(format!("{:>4} {:>7} {:>12} {:>12}", row.n, row.states, row.des, row.bound));
            }
            Ok(r.body(json!({ "rows": to_value(&rows) })))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command: Vec<String> = std::env::args().skip(1).collect();
    let start = Instant::now();
    let outcome = match &cli.cmd {
        Cmd::Run { machine, input, trace } => cmd_run(machine, &input_arg(input), *trace),
        Cmd::Analyze { machine, input } => cmd_analyze(machine, &input_arg(input)),
        Cmd::Pump { spec, factorization, imax } => cmd_pump(spec, factorization, *imax),
        Cmd::Refute { target, c, imax, n } => cmd_refute(target, *c, *imax, *n),
        Cmd::Zoo(cmd) => cmd_zoo(cmd),
        Cmd::Lda(cmd) => cmd_lda(cmd),
        Cmd::Family(cmd) => cmd_family(cmd),
    };
    let wall_ms = start.elapsed().as_secs_f64() * 1000.0;
    match outcome {
        Ok(r) => {
            if cli.json {
                let mut doc = json!({
                    "command": command,
                    "parameters": r.parameters,
                    "verdict": r.verdict,
                    "exit_code": r.code,
                    "wall_time_ms": wall_ms,
                });
                if let Value::Object(extra) = r.body {
                    doc.as_object_mut().expect("object").extend(extra);
                }
                println!("{}", serde_json::to_string_pretty(&doc).expect("reports serialize"));
            } else {
                for l in &r.text {
                    println!("{l}");
                }
                println!("verdict: {}", r.verdict);
            }
            ExitCode::from(r.code)
        }
        Err(e) => {
            if cli.json {
                println!("{}", json!({ "command": command, "error": e, "exit_code": 2 }));
            }
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
