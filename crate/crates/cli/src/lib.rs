//! Request handling behind the `deltaset` binary.
//!
//! [`run`] turns a validated [`RunRequest`] into an exit status plus the text
//! destined for stdout and stderr, so the whole command surface can be
//! exercised without spawning processes. JSON output is built from
//! `serde_json::Value` (whose maps are ordered by key) and printed compactly,
//! which makes it canonical: parsing and re-serializing reproduces it byte
//! for byte. Rationals are emitted as `"num/den"` strings.

use std::fmt::Write as _;
use std::time::Instant;

use delta_core::arith::lcm;
use delta_core::{
    bound_report, brute_force_delta, chapman_bound, delta_set, enumerate_factorizations,
    kernel_basis, min_delta, omega_for, partition_lengths, verify_delta_e2, verify_geometry,
    verify_periodicity, ChapmanVariant, DeltaOptions, DeltaSet, LengthBands, Monoid, Rational,
};
use serde_json::{json, Map, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Delta,
    Bounds,
    Factorizations,
    Lengths,
    ElementDelta,
    Oracle,
    Verify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Delta => "delta",
            Command::Bounds => "bounds",
            Command::Factorizations => "factorizations",
            Command::Lengths => "lengths",
            Command::ElementDelta => "element-delta",
            Command::Oracle => "oracle",
            Command::Verify => "verify",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone)]
pub struct RunRequest {
    pub command: Command,
    pub generators: Vec<u64>,
    /// Required by `factorizations`, `lengths` and `element-delta`;
    /// optional for `verify`, where it replaces the sampled elements.
    pub element: Option<u64>,
    /// Required by `oracle`.
    pub limit: Option<u64>,
    /// Worker threads for `delta`; `None` means the logical CPU count.
    pub parallelism: Option<usize>,
    pub output: OutputFormat,
    pub chapman_variant: ChapmanVariant,
    /// Number of elements `verify` samples above `N_S`.
    pub samples: u64,
}

impl RunRequest {
    pub fn new(command: Command, generators: Vec<u64>) -> Self {
        RunRequest {
            command,
            generators,
            element: None,
            limit: None,
            parallelism: None,
            output: OutputFormat::Text,
            chapman_variant: ChapmanVariant::Table,
            samples: 3,
        }
    }

    pub fn validate(&self) -> Result<(), RunError> {
        let needs_element = matches!(
            self.command,
            Command::Factorizations | Command::Lengths | Command::ElementDelta
        );
        if needs_element && self.element.is_none() {
            return Err(RunError::Usage(format!(
                "`{}` requires --element N",
                self.command.name()
            )));
        }
        if self.command == Command::Oracle && self.limit.is_none() {
            return Err(RunError::Usage("`oracle` requires --limit N".into()));
        }
        if self.parallelism == Some(0) {
            return Err(RunError::Usage("--threads must be positive".into()));
        }
        if self.generators.is_empty() {
            return Err(RunError::Usage("no generators given".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RunError {
    Usage(String),
    Domain(delta_core::Error),
}

impl RunError {
    pub fn status(&self) -> i32 {
        match self {
            RunError::Usage(_) => EXIT_USAGE,
            RunError::Domain(_) => EXIT_DOMAIN,
        }
    }
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Usage(msg) => write!(f, "usage: {msg}"),
            RunError::Domain(e) => write!(f, "{e}"),
        }
    }
}

impl From<delta_core::Error> for RunError {
    fn from(e: delta_core::Error) -> Self {
        RunError::Domain(e)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A finished computation in both renderings.
struct Report {
    json: Value,
    text: String,
}

pub fn run(req: &RunRequest) -> RunOutcome {
    match execute(req) {
        Ok(report) => RunOutcome {
            status: EXIT_OK,
            stdout: render(&report, req.output),
            stderr: String::new(),
        },
        Err(e) => RunOutcome {
            status: e.status(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Runs `template` once per generator list in `input`.
///
/// Blank lines and `#` comments are skipped. A failing line is reported on
/// stderr with its 1-based line number and the batch carries on; the final
/// status is the most severe one seen.
pub fn run_batch(template: &RunRequest, input: &str) -> RunOutcome {
    let mut out = RunOutcome {
        status: EXIT_OK,
        stdout: String::new(),
        stderr: String::new(),
    };
    for (idx, raw) in input.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let lineno = idx + 1;
        let generators: Result<Vec<u64>, _> =
            line.split_whitespace().map(str::parse::<u64>).collect();
        let result = match generators {
            Ok(generators) => execute(&RunRequest {
                generators,
                ..template.clone()
            }),
            Err(e) => Err(RunError::Usage(format!(
                "cannot parse generators `{line}`: {e}"
            ))),
        };
        match result {
            Ok(report) => out.stdout.push_str(&render(&report, template.output)),
            Err(e) => {
                let _ = writeln!(out.stderr, "line {lineno}: error: {e}");
                out.status = out.status.max(e.status());
            }
        }
    }
    out
}

fn render(report: &Report, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => format!("{}\n", report.json),
        OutputFormat::Text => report.text.clone(),
    }
}

fn execute(req: &RunRequest) -> Result<Report, RunError> {
    req.validate()?;
    let m = Monoid::new(&req.generators)?;
    match req.command {
        Command::Delta => delta_report(&m, req),
        Command::Bounds => bounds_report(&m, req),
        Command::Factorizations => factorizations_report(&m, req.element.unwrap()),
        Command::Lengths => lengths_report(&m, req.element.unwrap()),
        Command::ElementDelta => element_delta_report(&m, req.element.unwrap()),
        Command::Oracle => oracle_report(&m, req.limit.unwrap()),
        Command::Verify => verify_report(&m, req),
    }
}

fn rational(r: Rational) -> Value {
    Value::String(r.to_string())
}

fn delta_json(d: &DeltaSet) -> Value {
    d.iter().collect::<Vec<_>>().into()
}

fn millis(start: Instant) -> f64 {
    (start.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

fn header(m: &Monoid) -> (Map<String, Value>, String) {
    let mut obj = Map::new();
    obj.insert("generators".into(), m.generators().to_vec().into());
    (obj, format!("S = {m}\n"))
}

/// `d = min Δ(S)`, defined once there is at least one relation.
fn min_gap(m: &Monoid) -> Result<Option<u64>, RunError> {
    if m.embedding_dimension() < 2 {
        return Ok(None);
    }
    Ok(Some(min_delta(&kernel_basis(m)?)?))
}

fn delta_report(m: &Monoid, req: &RunRequest) -> Result<Report, RunError> {
    let start = Instant::now();
    let opts = DeltaOptions {
        threads: req.parallelism,
        retain_per_element: false,
        chapman_variant: req.chapman_variant,
    };
    let c = delta_set(m, &opts)?;
    let d = min_gap(m)?;
    let elapsed_ms = millis(start);

    let (mut obj, mut text) = header(m);
    if let Some(d) = d {
        obj.insert("d".into(), d.into());
        let _ = writeln!(text, "d = {d}");
    }
    if let Some(r) = &c.bound_report {
        obj.insert("n_s".into(), r.n_s.into());
        obj.insert("window_top".into(), r.window_top.into());
        let _ = writeln!(text, "N_S = {}\nwindow top = {}", r.n_s, r.window_top);
    }
    if m.embedding_dimension() >= 2 {
        let bound = chapman_bound(m, req.chapman_variant)?;
        obj.insert("chapman_bound".into(), bound.into());
        let _ = writeln!(text, "comparison bound = {bound}");
    }
    obj.insert("delta".into(), delta_json(&c.delta));
    obj.insert(
        "stats".into(),
        json!({ "factorizations": c.stats.factorizations, "elapsed_ms": elapsed_ms }),
    );
    let _ = writeln!(text, "Δ(S) = {}", c.delta);
    let _ = writeln!(
        text,
        "{} factorizations of {} elements, {} thread(s), {elapsed_ms} ms",
        c.stats.factorizations, c.stats.elements_enumerated, c.stats.threads
    );
    Ok(Report {
        json: obj.into(),
        text,
    })
}

fn bounds_report(m: &Monoid, req: &RunRequest) -> Result<Report, RunError> {
    let r = bound_report(m, req.chapman_variant)?;
    let (mut obj, mut text) = header(m);
    obj.insert("d".into(), r.d.into());
    let _ = writeln!(text, "d = {}", r.d);
    let indexed = |vals: &[(usize, Rational)]| -> Value {
        vals.iter()
            .map(|&(i, v)| json!({ "i": i, "value": rational(v) }))
            .collect::<Vec<_>>()
            .into()
    };
    obj.insert("s_lower".into(), indexed(&r.s_lower));
    obj.insert("s_upper".into(), indexed(&r.s_upper));
    for (i, v) in &r.s_lower {
        let _ = writeln!(text, "S_{i} = {v}");
    }
    for (i, v) in &r.s_upper {
        let _ = writeln!(text, "S'_{i} = {v}");
    }
    obj.insert("n_s".into(), r.n_s.into());
    obj.insert("window_top".into(), r.window_top.into());
    obj.insert("chapman_bound".into(), r.chapman.into());
    let _ = writeln!(
        text,
        "N_S = {}\nwindow top = {}\ncomparison bound = {}",
        r.n_s, r.window_top, r.chapman
    );
    Ok(Report {
        json: obj.into(),
        text,
    })
}

fn factorizations_report(m: &Monoid, s: u64) -> Result<Report, RunError> {
    let fs = enumerate_factorizations(m, s);
    let (mut obj, mut text) = header(m);
    obj.insert("element".into(), s.into());
    obj.insert("count".into(), (fs.len() as u64).into());
    obj.insert(
        "factorizations".into(),
        fs.iter()
            .map(|x| Value::from(x.counts.clone()))
            .collect::<Vec<_>>()
            .into(),
    );
    let _ = writeln!(text, "{} factorizations of {s}", fs.len());
    for x in fs.iter() {
        let coords: Vec<String> = x.counts.iter().map(u64::to_string).collect();
        let _ = writeln!(text, "({})  length {}", coords.join(", "), x.length());
    }
    Ok(Report {
        json: obj.into(),
        text,
    })
}

fn lengths_report(m: &Monoid, s: u64) -> Result<Report, RunError> {
    let (table, count) = omega_for(m, s);
    let (mut obj, mut text) = header(m);
    obj.insert("element".into(), s.into());
    obj.insert("factorizations".into(), count.into());
    obj.insert(
        "lengths".into(),
        table.lengths().copied().collect::<Vec<_>>().into(),
    );
    obj.insert(
        "max_first_coordinate".into(),
        table
            .entries
            .iter()
            .map(|(&l, &x)| json!({ "length": l, "x1": x }))
            .collect::<Vec<_>>()
            .into(),
    );
    let lengths: Vec<String> = table.lengths().map(u64::to_string).collect();
    let _ = writeln!(
        text,
        "L({s}) = {{{}}}  ({count} factorizations)",
        lengths.join(", ")
    );
    for (l, x) in &table.entries {
        let _ = writeln!(text, "length {l}: max x_1 = {x}");
    }
    Ok(Report {
        json: obj.into(),
        text,
    })
}

fn element_delta_report(m: &Monoid, s: u64) -> Result<Report, RunError> {
    let (table, _) = omega_for(m, s);
    let delta = table.delta();
    let (mut obj, mut text) = header(m);
    obj.insert("element".into(), s.into());
    obj.insert("member".into(), (!table.is_empty()).into());
    obj.insert("delta".into(), delta_json(&delta));
    if table.is_empty() {
        let _ = writeln!(text, "{s} is not in S");
    }
    let _ = writeln!(text, "Δ({s}) = {delta}");
    Ok(Report {
        json: obj.into(),
        text,
    })
}

fn oracle_report(m: &Monoid, limit: u64) -> Result<Report, RunError> {
    let start = Instant::now();
    let delta = brute_force_delta(m, limit)?;
    let elapsed_ms = millis(start);
    let (mut obj, mut text) = header(m);
    obj.insert("limit".into(), limit.into());
    obj.insert("delta".into(), delta_json(&delta));
    obj.insert("stats".into(), json!({ "elapsed_ms": elapsed_ms }));
    let _ = writeln!(
        text,
        "union of Δ(s) for s <= {limit} = {delta}\n{elapsed_ms} ms"
    );
    Ok(Report {
        json: obj.into(),
        text,
    })
}

/// Elements checked by `verify`: the requested one, or `samples` elements
/// spread evenly over one period `lcm(a_1, a_p)` starting at `N_S`.
fn verify_elements(req: &RunRequest, n_s: u64, period: u64) -> Vec<u64> {
    match req.element {
        Some(s) => vec![s],
        None => {
            let k = req.samples.max(1);
            let stride = (period / k).max(1);
            (0..req.samples).map(|i| n_s + i * stride).collect()
        }
    }
}

fn verify_report(m: &Monoid, req: &RunRequest) -> Result<Report, RunError> {
    let r = bound_report(m, req.chapman_variant)?;
    let (d, n_s) = (r.d, r.n_s);
    let period = lcm(m.multiplicity(), m.largest())?;
    let (mut obj, mut text) = header(m);
    obj.insert("d".into(), d.into());
    obj.insert("n_s".into(), n_s.into());
    let _ = writeln!(text, "d = {d}\nN_S = {n_s}");

    let geometry = verify_geometry(m, d, n_s)?;
    obj.insert("geometry".into(), geometry.into());
    let _ = writeln!(text, "geometry at N_S: {}", verdict(geometry));
    let mut all_hold = geometry;

    let mut bands = Vec::new();
    for s in verify_elements(req, n_s, period) {
        let part = partition_lengths(m, s, n_s, d)?;
        let holds = verify_delta_e2(&part, d);
        let recombines = part.delta() == part.recombined_delta(d);
        all_hold &= holds && recombines;
        let middle = part.e2_lengths();
        bands.push(json!({
            "element": s,
            "holds": holds,
            "middle_lengths": middle,
            "recombines": recombines,
        }));
        let _ = writeln!(
            text,
            "middle band at {s}: {} (lengths {middle:?}); recombination: {}",
            verdict(holds),
            verdict(recombines)
        );
    }
    obj.insert("delta_e2".into(), bands.into());

    let periodic = verify_periodicity(m, req.samples)?;
    all_hold &= periodic;
    obj.insert(
        "periodicity".into(),
        json!({ "holds": periodic, "period": period, "samples": req.samples }),
    );
    let _ = writeln!(
        text,
        "period {period} over {} elements: {}",
        req.samples,
        verdict(periodic)
    );
    obj.insert("all_hold".into(), all_hold.into());
    let _ = writeln!(
        text,
        "{}",
        if all_hold {
            "all checks hold"
        } else {
            "SOME CHECKS FAILED"
        }
    );
    Ok(Report {
        json: obj.into(),
        text,
    })
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "holds"
    } else {
        "FAILS"
    }
}
