//! Command-line front end: `verify`, `scan`, `oracle` and `factor`.
//!
//! [`execute`] runs one invocation and returns the exit code with the captured
//! output; the binary only forwards it to the process streams.

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use crate::curve::{Curve, COUNT_BOUND};
use crate::divpoly::{check_torsion_prime, psi, DEFAULT_ELL_CAP};
use crate::error::{Error, Result};
use crate::ff::{is_prime, make_extension, make_prime_field, Field, FieldElement};
use crate::frobclass::{classify_with, KIND_NAMES};
use crate::oracle::{check_oracle_scale, run_oracle, OracleRun, ORACLE_MAX_ELL, ORACLE_MAX_Q};
use crate::pattern::{predict, verify, PredictionOutcome};
use crate::poly::{factor, pattern_of, FactorPattern, Polynomial};
use crate::report::*;

#[derive(Parser, Debug)]
#[command(name = "psipattern", version, about = "Factorisation patterns of elliptic division polynomials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Predict the pattern of psi_l for one curve and check it by factoring.
    Verify(InstanceArgs),
    /// Classify and verify every curve over a range of primes.
    Scan(ScanArgs),
    /// Build an explicit torsion basis and report the Frobenius matrix.
    Oracle(InstanceArgs),
    /// Factor a polynomial over F_{p^m}.
    Factor(FactorArgs),
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Emit JSON instead of text.
    #[arg(long)]
    pub json: bool,
    /// Write the report to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Leave timings out of the report.
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Args, Debug, Clone)]
pub struct InstanceArgs {
    #[arg(long)]
    pub p: u64,
    /// Degree of the base field over F_p.
    #[arg(long, default_value_t = 1)]
    pub m: usize,
    /// Integer, or comma-separated coefficients (constant first) when m > 1.
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, allow_hyphen_values = true)]
    pub b: String,
    #[arg(long = "l")]
    pub l: u64,
    /// Also run the explicit-basis oracle.
    #[arg(long)]
    pub oracle: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct ScanArgs {
    #[arg(long, default_value_t = 5)]
    pub p_min: u64,
    #[arg(long, default_value_t = 47)]
    pub p_max: u64,
    /// Comma-separated torsion primes.
    #[arg(long, default_value = "3,5,7")]
    pub l_set: String,
    /// Out-of-scope instances factored per class.
    #[arg(long, default_value_t = 5)]
    pub quota: usize,
    /// Cross-check every verified instance within oracle scale.
    #[arg(long)]
    pub oracle: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct FactorArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value_t = 1)]
    pub m: usize,
    /// Coefficients, constant first: comma-separated integers when m = 1,
    /// otherwise ';'-separated comma vectors.
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Verify,
    Scan,
    Oracle,
    Factor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// A validated invocation.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: CommandKind,
    pub p: u64,
    pub m: usize,
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub ell: u64,
    pub primes: Vec<u64>,
    pub ells: Vec<u64>,
    pub quota: usize,
    pub coeffs: Vec<Vec<i64>>,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub oracle: bool,
    pub format: Format,
    pub timing: bool,
}

fn parse_ints(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| Error::InvalidInput(format!("not an integer: {t:?}"))))
        .collect()
}

fn check_prime_field(p: u64, m: usize) -> Result<()> {
    make_prime_field(p)?;
    if m == 0 {
        return Err(Error::ExtensionDegree(0));
    }
    let q = (p as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
    if q > COUNT_BOUND as u128 {
        return Err(Error::FieldTooLarge { cardinality: format!("{p}^{m}"), bound: COUNT_BOUND });
    }
    Ok(())
}

fn check_ell(ell: u64, p: u64) -> Result<()> {
    check_torsion_prime(ell, p)?;
    if ell > DEFAULT_ELL_CAP {
        return Err(Error::InvalidEll { ell, reason: format!("exceeds the cap {DEFAULT_ELL_CAP}") });
    }
    Ok(())
}

fn parse_element(s: &str, m: usize) -> Result<Vec<i64>> {
    let v = parse_ints(s)?;
    if v.len() > m || (m == 1 && v.len() != 1) {
        return Err(Error::InvalidInput(format!("{s:?} has {} components for a degree-{m} field", v.len())));
    }
    Ok(v)
}

impl RunConfig {
    fn base(command: CommandKind, o: &OutputArgs) -> Self {
        RunConfig {
            command,
            p: 0,
            m: 1,
            a: vec![],
            b: vec![],
            ell: 0,
            primes: vec![],
            ells: vec![],
            quota: 0,
            coeffs: vec![],
            seed: o.seed,
            out: o.out.clone(),
            oracle: false,
            format: if o.json { Format::Json } else { Format::Text },
            timing: !o.no_timing,
        }
    }

    /// Validates arguments before any computation.
    pub fn from_command(cmd: &Command) -> Result<Self> {
        match cmd {
            Command::Verify(i) | Command::Oracle(i) => {
                let kind = if matches!(cmd, Command::Verify(_)) { CommandKind::Verify } else { CommandKind::Oracle };
                let mut c = RunConfig::base(kind, &i.output);
                check_prime_field(i.p, i.m)?;
                check_ell(i.l, i.p)?;
                c.p = i.p;
                c.m = i.m;
                c.ell = i.l;
                c.a = parse_element(&i.a, i.m)?;
                c.b = parse_element(&i.b, i.m)?;
                c.oracle = i.oracle || kind == CommandKind::Oracle;
                if c.oracle && (c.ell > ORACLE_MAX_ELL || (i.p as u128).pow(i.m as u32) > ORACLE_MAX_Q as u128) {
                    return Err(Error::OracleScale(format!(
                        "oracle needs l <= {ORACLE_MAX_ELL} and q <= {ORACLE_MAX_Q}, got l = {}, q = {}^{}",
                        c.ell, i.p, i.m
                    )));
                }
                Ok(c)
            }
            Command::Scan(s) => {
                let mut c = RunConfig::base(CommandKind::Scan, &s.output);
                if s.p_min > s.p_max {
                    return Err(Error::InvalidInput(format!("empty prime range {}..{}", s.p_min, s.p_max)));
                }
                c.primes = (s.p_min.max(5)..=s.p_max).filter(|&p| is_prime(p)).collect();
                if c.primes.is_empty() {
                    return Err(Error::InvalidInput(format!("no primes > 3 in {}..{}", s.p_min, s.p_max)));
                }
                check_prime_field(*c.primes.last().expect("nonempty"), 1)?;
                let mut ells = parse_ints(&s.l_set)?
                    .into_iter()
                    .map(|l| u64::try_from(l).map_err(|_| Error::InvalidInput(format!("bad l {l}"))))
                    .collect::<Result<Vec<_>>>()?;
                ells.sort_unstable();
                ells.dedup();
                for &l in &ells {
                    // l = p is skipped per prime
                    check_ell(l, 2)?;
                }
                c.ells = ells;
                c.quota = s.quota;
                c.oracle = s.oracle;
                Ok(c)
            }
            Command::Factor(f) => {
                let mut c = RunConfig::base(CommandKind::Factor, &f.output);
                check_prime_field(f.p, f.m)?;
                c.p = f.p;
                c.m = f.m;
                c.coeffs = if f.m == 1 {
                    parse_ints(&f.coeffs)?.into_iter().map(|x| vec![x]).collect()
                } else {
                    f.coeffs.split(';').map(|e| parse_element(e, f.m)).collect::<Result<_>>()?
                };
                Ok(c)
            }
        }
    }

    fn field(&self) -> Result<Field> {
        let k = make_prime_field(self.p)?;
        if self.m == 1 { Ok(k) } else { make_extension(&k, self.m) }
    }
}

fn element(k: &Field, v: &[i64]) -> Result<FieldElement> {
    match k.base() {
        None => Ok(k.from_int(v[0])),
        Some(base) => k.from_coefficients(&v.iter().map(|&x| base.from_int(x)).collect::<Vec<_>>()),
    }
}

fn modulus_echo(k: &Field) -> Option<Vec<u64>> {
    k.modulus().map(|m| m.coefficients().iter().map(|c| c.as_u64().expect("prime-field coefficient")).collect())
}

fn instance(cfg: &RunConfig) -> Result<(Curve, InstanceEcho)> {
    let k = cfg.field()?;
    let (a, b) = (element(&k, &cfg.a)?, element(&k, &cfg.b)?);
    let echo = InstanceEcho {
        p: cfg.p,
        m: cfg.m,
        modulus: modulus_echo(&k),
        a: a.to_json(),
        b: b.to_json(),
        ell: cfg.ell,
    };
    Ok((crate::curve::make_curve(&k, a, b)?, echo))
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn render<T: serde::Serialize>(cfg: &RunConfig, report: &T, text: String) -> String {
    match cfg.format {
        Format::Json => serde_json::to_string_pretty(report).expect("reports serialize") + "\n",
        Format::Text => text,
    }
}

pub fn cmd_verify(cfg: &RunConfig) -> Result<VerificationReport> {
    let (c, echo) = instance(cfg)?;
    let v = verify(&c, cfg.ell, cfg.seed)?;
    let mut report = VerificationReport::new(echo, &v, cfg.timing);
    if cfg.oracle {
        let t0 = Instant::now();
        let run = run_oracle(&c, cfg.ell, cfg.seed)?;
        report.oracle = Some(OracleSection::new(&run, &v.class, true));
        if let Some(t) = report.timings.as_mut() {
            t.oracle_us = Some(t0.elapsed().as_micros() as u64);
        }
    }
    Ok(report)
}

pub fn cmd_oracle(cfg: &RunConfig) -> Result<OracleReport> {
    let (c, echo) = instance(cfg)?;
    check_oracle_scale(&c, cfg.ell)?;
    let t0 = Instant::now();
    let run = run_oracle(&c, cfg.ell, cfg.seed)?;
    let oracle_us = t0.elapsed().as_micros() as u64;
    let v = verify(&c, cfg.ell, cfg.seed)?;
    let section = OracleSection::new(&run, &v.class, true);
    let predicted = v.prediction.pattern().cloned();
    let consistent = section.consistent(&v.empirical) && predicted.as_ref().is_none_or(|p| p == &run.pattern);
    let mut timings = cfg.timing.then(|| TimingReport::from(&v.timings));
    if let Some(t) = timings.as_mut() {
        t.oracle_us = Some(oracle_us);
    }
    Ok(OracleReport {
        schema_version: SCHEMA_VERSION.into(),
        command: "oracle".into(),
        instance: echo,
        trace: v.order.trace,
        class: ClassReport::from(&v.class),
        factor_pattern: v.empirical,
        predicted,
        oracle: section,
        consistent,
        timings,
    })
}

pub fn cmd_factor(cfg: &RunConfig) -> Result<FactorReport> {
    let k = cfg.field()?;
    let coeffs = cfg.coeffs.iter().map(|v| element(&k, v)).collect::<Result<Vec<_>>>()?;
    let f = Polynomial::from_coefficients(&k, &coeffs)?;
    if f.is_zero() {
        return Err(Error::InvalidInput("cannot factor the zero polynomial".into()));
    }
    let fz = factor(&f, cfg.seed)?;
    let factors = fz
        .factors
        .iter()
        .map(|(g, e)| FactorEntry {
            degree: g.degree().unwrap_or(0),
            multiplicity: *e,
            coefficients: g.coefficients().iter().map(FieldElement::to_json).collect(),
            text: g.to_string(),
        })
        .collect();
    Ok(FactorReport {
        schema_version: SCHEMA_VERSION.into(),
        command: "factor".into(),
        p: cfg.p,
        m: cfg.m,
        modulus: modulus_echo(&k),
        input: f.to_string(),
        leading: fz.leading.to_json(),
        factors,
        pattern: pattern_of(&fz),
    })
}

struct Classified {
    p: u64,
    a: u64,
    b: u64,
    ell: u64,
    trace: i64,
    outcome: Result<PredictionOutcome>,
}

fn classify_curve(p: u64, a: u64, b: u64, ells: &[u64]) -> Vec<Classified> {
    let k = make_prime_field(p).expect("validated prime");
    let Ok(c) = Curve::from_ints(&k, a as i64, b as i64) else { return vec![] };
    let order = c.count_points();
    ells.iter()
        .filter(|&&l| l != p)
        .map(|&ell| {
            let outcome = order.clone().and_then(|o| {
                let psi_x = psi(&c, ell as usize)?.xpart;
                predict(&classify_with(&c, ell, &o, &psi_x)?)
            });
            Classified { p, a, b, ell, trace: order.as_ref().map(|o| o.trace).unwrap_or(0), outcome }
        })
        .collect()
}

struct Checked {
    empirical: FactorPattern,
    oracle: Option<bool>,
}

fn check_instance(x: &Classified, outcome: &PredictionOutcome, oracle: bool, seed: u64) -> Result<Checked> {
    let k = make_prime_field(x.p)?;
    let c = Curve::from_ints(&k, x.a as i64, x.b as i64)?;
    let psi_x = psi(&c, x.ell as usize)?.xpart;
    let empirical = pattern_of(&factor(&psi_x, seed)?);
    let oracle = if oracle && x.ell <= ORACLE_MAX_ELL && x.p <= ORACLE_MAX_Q {
        let run: OracleRun = run_oracle(&c, x.ell, seed)?;
        let section = OracleSection::new(&run, &class_of(outcome), false);
        Some(section.consistent(&empirical) && outcome.pattern().is_none_or(|p| p == &run.pattern))
    } else {
        None
    };
    Ok(Checked { empirical, oracle })
}

fn class_of(o: &PredictionOutcome) -> crate::frobclass::FrobeniusClass {
    match o {
        PredictionOutcome::Predicted(p) => p.class,
        PredictionOutcome::OutOfScope { class, .. } => *class,
    }
}

pub fn cmd_scan(cfg: &RunConfig) -> ScanReport {
    let t0 = Instant::now();
    let curves: Vec<(u64, u64, u64)> = cfg
        .primes
        .iter()
        .flat_map(|&p| (0..p).flat_map(move |a| (0..p).map(move |b| (p, a, b))))
        .collect();
    let classified: Vec<Classified> = curves
        .par_iter()
        .map(|&(p, a, b)| classify_curve(p, a, b, &cfg.ells))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    let nonsingular = {
        let mut seen: Vec<(u64, u64, u64)> = classified.iter().map(|x| (x.p, x.a, x.b)).collect();
        seen.dedup();
        seen.len()
    };

    // the quota is applied in iteration order so the selection does not depend on scheduling
    let mut taken = [0usize; 5];
    let selected: Vec<bool> = classified
        .iter()
        .map(|x| match &x.outcome {
            Ok(PredictionOutcome::Predicted(_)) => true,
            Ok(PredictionOutcome::OutOfScope { class, .. }) => {
                let i = kind_index(class.kind.name());
                taken[i] += 1;
                taken[i] <= cfg.quota
            }
            Err(_) => false,
        })
        .collect();
    let checked: Vec<Option<Result<Checked>>> = classified
        .par_iter()
        .zip(selected.par_iter())
        .map(|(x, &sel)| match (&x.outcome, sel) {
            (Ok(o), true) => Some(check_instance(x, o, cfg.oracle, cfg.seed)),
            _ => None,
        })
        .collect();

    let mut tallies: Vec<ClassTally> = KIND_NAMES
        .iter()
        .map(|n| ClassTally {
            variant: (*n).into(),
            classified: 0,
            verified: 0,
            matched: 0,
            mismatched: 0,
            oracle_checked: 0,
        })
        .collect();
    let mut witnesses: Vec<Option<ScanInstance>> = vec![None; 5];
    let mut mismatches = vec![];
    let mut errors = vec![];
    let mut collisions = 0;
    let mut collision_example = None;
    for (x, ch) in classified.iter().zip(checked) {
        let err = |message: String| ScanError { p: x.p, a: x.a, b: x.b, ell: x.ell, message };
        let outcome = match &x.outcome {
            Ok(o) => o,
            Err(e) => {
                errors.push(err(e.to_string()));
                continue;
            }
        };
        let class = class_of(outcome);
        let i = kind_index(class.kind.name());
        tallies[i].classified += 1;
        let mut inst = ScanInstance {
            p: x.p,
            a: x.a,
            b: x.b,
            ell: x.ell,
            trace: x.trace,
            class: ClassReport::from(&class),
            predicted: outcome.pattern().cloned(),
            empirical: None,
            oracle_consistent: None,
        };
        if let Some(pred) = outcome.prediction() {
            let raw = &pred.predicted.raw;
            if raw.len() != pred.predicted.pattern.entries().len() {
                collisions += 1;
                collision_example.get_or_insert_with(|| inst.clone());
            }
        }
        match ch {
            None => {}
            Some(Err(e)) => errors.push(err(e.to_string())),
            Some(Ok(ch)) => {
                tallies[i].verified += 1;
                inst.empirical = Some(ch.empirical.clone());
                inst.oracle_consistent = ch.oracle;
                if ch.oracle.is_some() {
                    tallies[i].oracle_checked += 1;
                }
                let theorem_ok = outcome.pattern().is_none_or(|p| p == &ch.empirical);
                if outcome.pattern().is_some() {
                    if theorem_ok {
                        tallies[i].matched += 1;
                    } else {
                        tallies[i].mismatched += 1;
                    }
                }
                if !theorem_ok || ch.oracle == Some(false) {
                    mismatches.push(inst.clone());
                }
                witnesses[i].get_or_insert(inst);
            }
        }
    }
    let absent_classes = KIND_NAMES
        .iter()
        .zip(&witnesses)
        .filter(|(_, w)| w.is_none())
        .map(|(n, _)| (*n).to_string())
        .collect();
    ScanReport {
        schema_version: SCHEMA_VERSION.into(),
        command: "scan".into(),
        primes: cfg.primes.clone(),
        ells: cfg.ells.clone(),
        quota: cfg.quota,
        oracle: cfg.oracle,
        curves: nonsingular,
        instances: classified.len(),
        tallies,
        witnesses: witnesses.into_iter().flatten().collect(),
        absent_classes,
        mismatches,
        degree_collisions: collisions,
        collision_example,
        errors,
        elapsed_ms: cfg.timing.then(|| t0.elapsed().as_millis() as u64),
    }
}

fn kind_index(name: &str) -> usize {
    KIND_NAMES.iter().position(|n| *n == name).expect("known variant")
}

fn run_config(cfg: &RunConfig) -> Result<(i32, String)> {
    Ok(match cfg.command {
        CommandKind::Verify => {
            let r = cmd_verify(cfg)?;
            (if r.mismatch() { 2 } else { 0 }, render(cfg, &r, r.to_text()))
        }
        CommandKind::Oracle => {
            let r = cmd_oracle(cfg)?;
            (if r.consistent { 0 } else { 2 }, render(cfg, &r, r.to_text()))
        }
        CommandKind::Factor => {
            let r = cmd_factor(cfg)?;
            (0, render(cfg, &r, r.to_text()))
        }
        CommandKind::Scan => {
            let r = cmd_scan(cfg);
            (if r.mismatches.is_empty() { 0 } else { 2 }, render(cfg, &r, r.to_text()))
        }
    })
}

/// Parses `args` (program name first) and runs the command.
pub fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let fail = |msg: String| Outcome { code: 1, stdout: String::new(), stderr: msg };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                fail(text)
            };
        }
    };
    let result = RunConfig::from_command(&cli.command).and_then(|cfg| {
        let (code, text) = run_config(&cfg)?;
        match &cfg.out {
            Some(path) => {
                std::fs::write(path, &text)
                    .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display())))?;
                Ok((code, String::new()))
            }
            None => Ok((code, text)),
        }
    });
    match result {
        Ok((code, stdout)) => Outcome { code, stdout, stderr: String::new() },
        Err(e) => fail(format!("error: {e}\n")),
    }
}
