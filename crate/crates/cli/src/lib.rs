//! Command implementations for the `lenstau` binary.
//!
//! Every command returns an [`Outcome`] instead of printing, so the whole
//! surface can be exercised in-process. Exit codes: 0 success, 1 a failed
//! verification or violated bound, 2 invalid input.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use lenstau::contact::{enumerate_tight, tau_xi_with, TauXi};
use lenstau::lens::{conjugate, pd_shift};
use lenstau::legendrian::{bound_report, parity_check, LegendrianRep};
use lenstau::simpleknot::{alexander_gradings, verify_two_tau_with};
use lenstau::{CorrectionTable, Error, KnotFloerData, LensSpace, Rat, ShiftForm, SimpleKnot, SpincLabel};
use serde::Serialize;

mod sweep;

pub use sweep::{run_sweep, SweepReport, Verdict};

pub const CSV_HEADER: &str = "p,q,k,label,A,tau,d,d_conj_shift,two_tau_check";

#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout, stderr: String::new() }
    }

    fn invalid(msg: impl std::fmt::Display) -> Self {
        Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

#[derive(Parser, Debug)]
#[command(name = "lenstau", version, about = "Correction terms, rational tau and Legendrian bounds for simple knots in lens spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Pretty,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    #[default]
    Proposition,
    Corollary,
}

impl From<FormArg> for ShiftForm {
    fn from(f: FormArg) -> Self {
        match f {
            FormArg::Proposition => ShiftForm::Proposition,
            FormArg::Corollary => ShiftForm::Corollary,
        }
    }
}

#[derive(clap::Args, Debug, Clone, Copy)]
#[group(multiple = false)]
pub struct FormatFlags {
    /// Machine-readable JSON.
    #[arg(long)]
    json: bool,
    /// One row per Spin^c label.
    #[arg(long)]
    csv: bool,
}

impl FormatFlags {
    fn format(self) -> Format {
        match (self.json, self.csv) {
            (true, _) => Format::Json,
            (_, true) => Format::Csv,
            _ => Format::Pretty,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Correction terms of L(p,q).
    #[command(allow_negative_numbers = true)]
    Dinv {
        p: i64,
        q: i64,
        #[command(flatten)]
        fmt: FormatFlags,
    },
    /// Alexander gradings and tau of the simple knot K(p,q,k).
    #[command(allow_negative_numbers = true)]
    Knot {
        p: i64,
        q: i64,
        k: i64,
        #[command(flatten)]
        fmt: FormatFlags,
        /// Compare against d(J(s + PD[K])) instead of d(Js + PD[K]).
        #[arg(long)]
        corollary: bool,
    },
    /// Recompute the reference values for K(4,1,2) and the tight structures on L(4,1).
    Table1 {
        #[arg(long, hide = true)]
        break_conjugation: bool,
    },
    /// Sweep every K(p,q,k) with p <= pmax through the identity and invariant checks.
    Verify {
        #[arg(long)]
        pmax: u64,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormArg::Proposition)]
        shift_form: FormArg,
    },
    /// The m-1 tight contact structures on L(m,1).
    #[command(allow_negative_numbers = true)]
    Contact {
        m: i64,
        /// Knot class K(m,1,k) used for tau_xi; defaults to floor(m/2).
        #[arg(long)]
        k: Option<i64>,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate both upper bounds on tb_Q + rot_Q for a formal representative.
    #[command(allow_negative_numbers = true)]
    Bound {
        p: i64,
        q: i64,
        k: i64,
        /// Index of a tight structure on L(p,1).
        #[arg(long, conflicts_with = "label", required_unless_present = "label")]
        xi: Option<i64>,
        /// Spin^c label to take tau* from.
        #[arg(long)]
        label: Option<u64>,
        #[arg(long, allow_hyphen_values = true)]
        tb: String,
        #[arg(long, allow_hyphen_values = true)]
        rot: String,
        #[arg(long)]
        json: bool,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => dispatch(cli.command),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome::ok(text)
            }
        }
    }
}

pub fn dispatch(command: Command) -> Outcome {
    match command {
        Command::Dinv { p, q, fmt } => cmd_dinv(p, q, fmt.format()),
        Command::Knot { p, q, k, fmt, corollary } => {
            let form = if corollary { ShiftForm::Corollary } else { ShiftForm::Proposition };
            cmd_knot(p, q, k, fmt.format(), form)
        }
        Command::Table1 { break_conjugation } => cmd_table1(break_conjugation),
        Command::Verify { pmax, jobs, report, shift_form } => cmd_verify(pmax, jobs, report, shift_form.into()),
        Command::Contact { m, k, json } => cmd_contact(m, k, json),
        Command::Bound { p, q, k, xi, label, tb, rot, json } => cmd_bound(p, q, k, xi, label, &tb, &rot, json),
    }
}

fn approx(r: &Rat) -> String {
    if r.is_integer() {
        String::new()
    } else {
        format!("≈ {}", r.approx_decimal(4))
    }
}

pub fn cmd_dinv(p: i64, q: i64, format: Format) -> Outcome {
    let space = match LensSpace::new(p, q) {
        Ok(s) => s,
        Err(e) => return Outcome::invalid(e),
    };
    let table = lenstau::lens::correction_terms(space);
    let mut out = String::new();
    match format {
        Format::Json => writeln!(out, "{}", table.to_json()).unwrap(),
        Format::Csv => {
            writeln!(out, "{CSV_HEADER}").unwrap();
            for s in space.labels() {
                writeln!(out, "{},{},,{},,,{},,", space.p(), space.q(), s, table.get(s)).unwrap();
            }
        }
        Format::Pretty => {
            writeln!(out, "L({},{}): {} Spin^c structures", space.p(), space.q(), space.p()).unwrap();
            writeln!(out, "{:>5}  {:<14}", "label", "d").unwrap();
            for s in space.labels() {
                let d = table.get(s);
                writeln!(out, "{:>5}  {:<14}{}", s, d.to_string(), approx(d)).unwrap();
            }
        }
    }
    Outcome::ok(out)
}

struct LabelRow {
    generator: usize,
    label: SpincLabel,
    a: Rat,
    tau: Rat,
    d: Rat,
    d_shift: Rat,
}

fn label_rows(data: &KnotFloerData, table: &CorrectionTable, form: ShiftForm) -> Vec<LabelRow> {
    let knot = data.simple_knot().expect("simple knot");
    let mut rows: Vec<LabelRow> = data
        .alexander
        .iter()
        .zip(&data.generator_label)
        .enumerate()
        .map(|(g, (a, &s))| {
            let label = SpincLabel(s as u64);
            LabelRow {
                generator: g,
                label,
                a: a.clone(),
                tau: data.tau[s].clone(),
                d: table.get(label).clone(),
                d_shift: table.get(form.apply(knot.space, label, knot.k as i64)).clone(),
            }
        })
        .collect();
    rows.sort_by_key(|r| r.label);
    rows
}

pub fn cmd_knot(p: i64, q: i64, k: i64, format: Format, form: ShiftForm) -> Outcome {
    let knot = match SimpleKnot::from_params(p, q, k) {
        Ok(knot) => knot,
        Err(e) => return Outcome::invalid(e),
    };
    let data = match alexander_gradings(knot) {
        Ok(d) => d,
        Err(e) => return internal(e),
    };
    let table = lenstau::lens::correction_terms(knot.space);
    let report = verify_two_tau_with(&data, &table, form);
    let rows = label_rows(&data, &table, form);
    let mut out = String::new();
    match format {
        Format::Json => writeln!(out, "{}", data.to_json()).unwrap(),
        Format::Csv => {
            writeln!(out, "{CSV_HEADER}").unwrap();
            for r in &rows {
                let check = r.tau.mul_int(2) == &r.d - &r.d_shift;
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{}",
                    knot.p(),
                    knot.q(),
                    knot.k,
                    r.label,
                    r.a,
                    r.tau,
                    r.d,
                    r.d_shift,
                    check
                )
                .unwrap();
            }
        }
        Format::Pretty => {
            let shift = match form {
                ShiftForm::Proposition => "d(Js+PD[K])",
                ShiftForm::Corollary => "d(J(s+PD[K]))",
            };
            writeln!(out, "{knot} in L({},{}), order {}", knot.p(), knot.q(), knot.order()).unwrap();
            writeln!(out, "{:>5} {:>5}  {:<10}{:<10}{:<10}{:<14}", "gen", "label", "A", "tau", "d", shift).unwrap();
            for r in &rows {
                writeln!(
                    out,
                    "{:>5} {:>5}  {:<10}{:<10}{:<10}{:<14}",
                    format!("x{}", r.generator),
                    r.label,
                    r.a.to_string(),
                    r.tau.to_string(),
                    r.d.to_string(),
                    r.d_shift.to_string()
                )
                .unwrap();
            }
            writeln!(out, "A_max = {} {}", data.a_max, approx(&data.a_max)).unwrap();
            writeln!(out, "chi(F) = {}", data.chi_f).unwrap();
            writeln!(out, "multiset identity 2 tau = d - {shift}: {}", holds(report.pass)).unwrap();
            writeln!(out, "label by label: {}", holds(report.per_label)).unwrap();
        }
    }
    Outcome { code: if report.pass { 0 } else { 1 }, stdout: out, stderr: String::new() }
}

fn holds(b: bool) -> &'static str {
    if b {
        "holds"
    } else {
        "FAILS"
    }
}

fn internal(e: Error) -> Outcome {
    Outcome { code: 1, stdout: String::new(), stderr: format!("invariant violation: {e}\n") }
}

fn rats(v: &[&str]) -> Vec<Rat> {
    v.iter().map(|s| s.parse().expect("literal")).collect()
}

fn row_line(out: &mut String, name: &str, got: &[Rat], want: &[Rat]) -> bool {
    let ok = got == want;
    let cells: String = got.iter().map(|r| format!("{:<8}", r.to_string())).collect();
    writeln!(out, "{name:<22}{cells}{}", if ok { "ok" } else { "MISMATCH" }).unwrap();
    if !ok {
        let cells: String = want.iter().map(|r| format!("{:<8}", r.to_string())).collect();
        writeln!(out, "{:<22}{cells}", "  expected").unwrap();
    }
    ok
}

/// Shifted conjugate used by `table1`; the broken variant is a negative
/// control for the test suite.
fn shifted_conjugate(space: LensSpace, s: SpincLabel, k: i64, broken: bool) -> SpincLabel {
    let j = if broken { SpincLabel((space.p() + space.q() - s.0) % space.p()) } else { conjugate(space, s) };
    pd_shift(space, j, k)
}

pub fn cmd_table1(break_conjugation: bool) -> Outcome {
    let knot = SimpleKnot::from_params(4, 1, 2).expect("valid");
    let data = match alexander_gradings(knot) {
        Ok(d) => d,
        Err(e) => return internal(e),
    };
    let table = lenstau::lens::correction_terms(knot.space);
    let labels: Vec<SpincLabel> = data.generator_label.iter().map(|&s| SpincLabel(s as u64)).collect();
    let k = knot.k as i64;

    let mut out = String::new();
    let mut ok = true;
    writeln!(out, "order-two simple knot {knot} in L(4,1)").unwrap();
    writeln!(out, "{:<22}{:<8}{:<8}{:<8}{:<8}", "x", "a", "b", "c", "d").unwrap();
    let tau: Vec<Rat> = labels.iter().map(|s| data.tau[s.index()].clone()).collect();
    let d: Vec<Rat> = labels.iter().map(|&s| table.get(s).clone()).collect();
    let shifted = |broken: bool, form: Option<ShiftForm>| -> Vec<Rat> {
        labels
            .iter()
            .map(|&s| {
                let t = match form {
                    Some(f) => f.apply(knot.space, s, k),
                    None => shifted_conjugate(knot.space, s, k, broken),
                };
                table.get(t).clone()
            })
            .collect()
    };
    let d_shift = shifted(break_conjugation, None);
    ok &= row_line(&mut out, "A(x)", &data.alexander, &rats(&["0", "1/2", "0", "-1/2"]));
    ok &= row_line(&mut out, "tau_s(x)", &tau, &rats(&["0", "1/2", "0", "-1/2"]));
    ok &= row_line(&mut out, "d(s(x))", &d, &rats(&["0", "3/4", "0", "-1/4"]));
    ok &= row_line(&mut out, "d(Js(x)+PD[K])", &d_shift, &rats(&["0", "-1/4", "0", "3/4"]));
    let identity = tau.iter().zip(&d).zip(&d_shift).all(|((t, a), b)| t.mul_int(2) == a - b);
    writeln!(out, "2 tau = d(s) - d(Js+PD[K]) in every column: {}", holds(identity)).unwrap();
    ok &= identity;
    let corollary_agrees = shifted(false, Some(ShiftForm::Corollary)) == shifted(false, Some(ShiftForm::Proposition));
    writeln!(
        out,
        "corollary reading d(J(s+PD[K])) {}",
        if corollary_agrees { "agrees for this order-two class" } else { "differs" }
    )
    .unwrap();

    writeln!(out).unwrap();
    writeln!(out, "tight contact structures on L(4,1)").unwrap();
    let structures = enumerate_tight(4).expect("m = 4");
    let want_h = rats(&["-2", "-1", "-2"]);
    let want_d = rats(&["0", "-1/4", "0"]);
    let want_tau = rats(&["0", "-1/2", "0"]);
    for (i, x) in structures.iter().enumerate() {
        let t = match tau_xi_with(x, &data, &table) {
            Ok(t) => t,
            Err(e) => return internal(e),
        };
        let row_ok =
            x.hopf == want_h[i] && x.d_xi == want_d[i] && t.values.len() == 1 && t.definitive() == Some(&want_tau[i]);
        ok &= row_ok;
        writeln!(
            out,
            "xi_{} rot {:>2}  h {:<6}d {:<6}tau {:<8}{}",
            x.index,
            x.rot,
            x.hopf.to_string(),
            x.d_xi.to_string(),
            value_set(&t),
            if row_ok { "ok" } else { "MISMATCH" }
        )
        .unwrap();
        if !row_ok {
            writeln!(out, "  expected h {} d {} tau {{{}}}", want_h[i], want_d[i], want_tau[i]).unwrap();
        }
    }
    writeln!(out).unwrap();
    writeln!(out, "{}", if ok { "all values match" } else { "MISMATCH" }).unwrap();
    Outcome { code: if ok { 0 } else { 1 }, stdout: out, stderr: String::new() }
}

fn value_set(t: &TauXi) -> String {
    let v: Vec<String> = t.values.iter().map(Rat::to_string).collect();
    format!("{{{}}}", v.join(", "))
}

pub fn cmd_verify(pmax: u64, jobs: usize, report: Option<PathBuf>, form: ShiftForm) -> Outcome {
    if pmax < 1 {
        return Outcome::invalid("--pmax must be at least 1");
    }
    let start = Instant::now();
    let sweep = match run_sweep(pmax, jobs, form) {
        Ok(s) => s,
        Err(e) => return Outcome::invalid(e),
    };
    let elapsed = start.elapsed();
    let mut out = String::new();
    if let Some(path) = &report {
        let json = serde_json::to_string_pretty(&sweep).expect("serializable") + "\n";
        if let Err(e) = std::fs::write(path, json) {
            return Outcome::invalid(format!("cannot write {}: {e}", path.display()));
        }
    }
    writeln!(out, "triples: {}", sweep.triples).unwrap();
    writeln!(out, "passed: {}", sweep.passed).unwrap();
    writeln!(out, "failed: {}", sweep.failed).unwrap();
    if sweep.per_label_mismatches > 0 {
        writeln!(out, "label-by-label mismatches under this reading: {}", sweep.per_label_mismatches).unwrap();
    }
    for f in &sweep.failures {
        writeln!(out, "FAIL {f}").unwrap();
    }
    writeln!(out, "wall time: {:.3} s", elapsed.as_secs_f64()).unwrap();
    Outcome { code: if sweep.failed == 0 { 0 } else { 1 }, stdout: out, stderr: String::new() }
}

#[derive(Serialize)]
struct ContactJson {
    m: u64,
    structures: Vec<ContactRow>,
}

#[derive(Serialize)]
struct ContactRow {
    rot: i64,
    tb: i64,
    h: Rat,
    d: Rat,
    tau: Vec<Rat>,
}

pub fn cmd_contact(m: i64, k: Option<i64>, json: bool) -> Outcome {
    let structures = match enumerate_tight(m) {
        Ok(s) => s,
        Err(e) => return Outcome::invalid(e),
    };
    let knot = match SimpleKnot::from_params(m, 1, k.unwrap_or(m / 2)) {
        Ok(knot) => knot,
        Err(e) => return Outcome::invalid(e),
    };
    let data = match alexander_gradings(knot) {
        Ok(d) => d,
        Err(e) => return internal(e),
    };
    let table = lenstau::lens::correction_terms(knot.space);
    let mut rows = Vec::new();
    for x in &structures {
        match tau_xi_with(x, &data, &table) {
            Ok(t) => rows.push((x, t)),
            Err(e) => return internal(e),
        }
    }
    let mut out = String::new();
    if json {
        let j = ContactJson {
            m: m as u64,
            structures: rows
                .iter()
                .map(|(x, t)| ContactRow {
                    rot: x.rot,
                    tb: x.tb,
                    h: x.hopf.clone(),
                    d: x.d_xi.clone(),
                    tau: t.values.iter().cloned().collect(),
                })
                .collect(),
        };
        writeln!(out, "{}", serde_json::to_string(&j).expect("serializable")).unwrap();
    } else {
        writeln!(out, "{} tight contact structures on L({m},1); tau_xi for {knot}", structures.len()).unwrap();
        for (x, t) in &rows {
            let labels: Vec<String> = t.labels.iter().map(|s| s.to_string()).collect();
            writeln!(
                out,
                "xi_{:<3} tb {:>4}  rot {:>4}  h {:<10}d {:<10}labels {:<10}tau {}{}",
                x.index,
                x.tb,
                x.rot,
                x.hopf.to_string(),
                x.d_xi.to_string(),
                labels.join(","),
                value_set(t),
                if t.definitive().is_some() { "" } else { "  (ambiguous)" }
            )
            .unwrap();
        }
    }
    Outcome::ok(out)
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_bound(p: i64, q: i64, k: i64, xi: Option<i64>, label: Option<u64>, tb: &str, rot: &str, json: bool) -> Outcome {
    let knot = match SimpleKnot::from_params(p, q, k) {
        Ok(knot) => knot,
        Err(e) => return Outcome::invalid(e),
    };
    let (tb_q, rot_q) = match (tb.parse::<Rat>(), rot.parse::<Rat>()) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return Outcome::invalid(e),
    };
    let rep = match LegendrianRep::new(knot, tb_q, rot_q) {
        Ok(r) => r,
        Err(e) => return Outcome::invalid(e),
    };
    let data = match alexander_gradings(knot) {
        Ok(d) => d,
        Err(e) => return internal(e),
    };
    let mut stderr = String::new();
    let (source, tau_star) = match (xi, label) {
        (Some(i), _) => {
            let structures = match enumerate_tight(p) {
                Ok(s) => s,
                Err(e) => return Outcome::invalid(e),
            };
            let Some(x) = structures.iter().find(|x| x.index as i64 == i) else {
                return Outcome::invalid(format!("--xi must lie in [1, {}]", p - 1));
            };
            let table = lenstau::lens::correction_terms(knot.space);
            let t = match tau_xi_with(x, &data, &table) {
                Ok(t) => t,
                Err(e) => return Outcome::invalid(e),
            };
            let tau = t.values.iter().next_back().cloned().expect("nonempty");
            if t.definitive().is_none() {
                writeln!(stderr, "note: tau_xi is ambiguous {}; using the largest candidate", value_set(&t)).unwrap();
            }
            (format!("xi_{i}"), tau)
        }
        (None, Some(s)) => {
            if s >= knot.p() {
                return Outcome::invalid(format!("--label must lie in [0, {})", knot.p()));
            }
            (format!("label {s}"), data.tau[s as usize].clone())
        }
        (None, None) => return Outcome::invalid("one of --xi or --label is required"),
    };
    let report = bound_report(&rep, &data, &tau_star);
    let parity = parity_check(&rep, &data);
    let mut out = String::new();
    if json {
        writeln!(out, "{}", serde_json::to_string(&report).expect("serializable")).unwrap();
    } else {
        let verdict = |b: bool| if b { "consistent" } else { "VIOLATED" };
        writeln!(out, "{knot}, tb_Q = {}, rot_Q = {}, tau* = {} ({source})", rep.tb_q, rep.rot_q, tau_star).unwrap();
        writeln!(out, "tb_Q + rot_Q = {}", report.lhs).unwrap();
        writeln!(out, "2 tau* - 1 = {}  slack {}  {}", report.tau_bound, report.slack_tau, verdict(report.satisfied_tau))
            .unwrap();
        writeln!(out, "-chi(F)/q' = {}  slack {}  {}", report.be_bound, report.slack_be, verdict(report.satisfied_be))
            .unwrap();
        writeln!(out, "parity of (lhs - 1)/2 against k_s: {}", verdict(parity)).unwrap();
        writeln!(out, "(formal representative; satisfying both bounds means consistent with them, not realized)").unwrap();
    }
    let code = if report.satisfied_tau && report.satisfied_be && parity { 0 } else { 1 };
    Outcome { code, stdout: out, stderr }
}
