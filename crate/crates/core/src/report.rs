//! Serializable reports and their text rendering.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value as Json;

use crate::curve::Point;
use crate::frobclass::FrobeniusClass;
use crate::oracle::{ConjugacyForm, FrobeniusMatrix, OracleRun, OrbitDegree};
use crate::pattern::{PatternFormula, PredictionOutcome, StageTimings, Verification};
use crate::poly::FactorPattern;

pub const SCHEMA_VERSION: &str = "1.0";

/// Label attached to the uncorrected formula wherever it is reported.
pub const REGRESSION_LABEL: &str = "regression demo: uncorrected i(x,y), not a prediction";

/// Curve parameters as given on the command line, with the extension modulus when `m > 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceEcho {
    pub p: u64,
    pub m: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub modulus: Option<Vec<u64>>,
    pub a: Json,
    pub b: Json,
    pub ell: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub variant: String,
    pub alpha: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rho: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub beta: Option<u64>,
    pub trace_mod_ell: u64,
    pub q_mod_ell: u64,
    pub in_scope: bool,
}

impl From<&FrobeniusClass> for ClassReport {
    fn from(fc: &FrobeniusClass) -> Self {
        ClassReport {
            variant: fc.kind.name().into(),
            alpha: fc.kind.alpha(),
            rho: fc.kind.rho(),
            beta: fc.kind.beta(),
            trace_mod_ell: fc.trace_mod_ell,
            q_mod_ell: fc.q_mod_ell,
            in_scope: fc.in_scope(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum PredictionReport {
    Predicted { raw: Vec<(usize, usize)>, pattern: FactorPattern },
    OutOfScope { reason: String },
}

impl From<&PredictionOutcome> for PredictionReport {
    fn from(p: &PredictionOutcome) -> Self {
        match p {
            PredictionOutcome::Predicted(p) => PredictionReport::Predicted {
                raw: p.predicted.raw.clone(),
                pattern: p.predicted.pattern.clone(),
            },
            PredictionOutcome::OutOfScope { reason, .. } => PredictionReport::OutOfScope { reason: reason.clone() },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegressionDemo {
    pub label: String,
    pub raw: Vec<(usize, usize)>,
    pub pattern: FactorPattern,
    pub matches_empirical: bool,
}

impl RegressionDemo {
    fn new(f: &PatternFormula, empirical: &FactorPattern) -> Self {
        RegressionDemo {
            label: REGRESSION_LABEL.into(),
            raw: f.raw.clone(),
            pattern: f.pattern.clone(),
            matches_empirical: &f.pattern == empirical,
        }
    }
}

/// Stage timings in microseconds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TimingReport {
    pub count_us: u64,
    pub psi_us: u64,
    pub classify_us: u64,
    pub factor_us: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle_us: Option<u64>,
}

impl From<&StageTimings> for TimingReport {
    fn from(t: &StageTimings) -> Self {
        TimingReport {
            count_us: t.count.as_micros() as u64,
            psi_us: t.psi.as_micros() as u64,
            classify_us: t.classify.as_micros() as u64,
            factor_us: t.factor.as_micros() as u64,
            oracle_us: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointReport {
    pub x: Json,
    pub y: Json,
}

impl PointReport {
    pub fn new(p: &Point) -> Option<Self> {
        Some(PointReport { x: p.x()?.to_json(), y: p.y()?.to_json() })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisReport {
    pub field_degree: usize,
    pub field: String,
    pub first: PointReport,
    pub second: PointReport,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleSection {
    pub splitting_degree: usize,
    pub matrix: FrobeniusMatrix,
    pub eigenvalues: Vec<u64>,
    pub form: ConjugacyForm,
    pub orbit_pattern: FactorPattern,
    pub alpha: usize,
    pub agrees_with_class: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub basis: Option<BasisReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub orbits: Option<Vec<OrbitDegree>>,
}

impl OracleSection {
    pub fn new(run: &OracleRun, class: &FrobeniusClass, detailed: bool) -> Self {
        let basis = detailed.then(|| BasisReport {
            field_degree: run.basis.degree(),
            field: run.basis.field.to_string(),
            first: PointReport::new(&run.basis.first).expect("basis points are affine"),
            second: PointReport::new(&run.basis.second).expect("basis points are affine"),
        });
        OracleSection {
            splitting_degree: run.splitting_degree,
            matrix: run.matrix,
            eigenvalues: run.matrix.eigenvalues(),
            form: run.form,
            orbit_pattern: run.pattern.clone(),
            alpha: run.alpha(),
            agrees_with_class: run.form.agrees_with(class) && run.alpha() as u64 == class.kind.alpha(),
            basis,
            orbits: detailed.then(|| run.orbits.clone()),
        }
    }

    /// Orbit pattern, factorisation and class all consistent.
    pub fn consistent(&self, empirical: &FactorPattern) -> bool {
        self.agrees_with_class && &self.orbit_pattern == empirical
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: String,
    pub command: String,
    pub instance: InstanceEcho,
    pub q: u64,
    pub points: u64,
    pub trace: i64,
    pub class: ClassReport,
    pub prediction: PredictionReport,
    pub psi_degree: usize,
    pub empirical: FactorPattern,
    #[serde(rename = "match")]
    pub matches: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub regression_demo: Option<RegressionDemo>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle: Option<OracleSection>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timings: Option<TimingReport>,
}

impl VerificationReport {
    pub fn new(instance: InstanceEcho, v: &Verification, timing: bool) -> Self {
        let uncorrected = v.prediction.prediction().and_then(|p| p.uncorrected.as_ref());
        VerificationReport {
            schema_version: SCHEMA_VERSION.into(),
            command: "verify".into(),
            instance,
            q: v.order.q,
            points: v.order.points,
            trace: v.order.trace,
            class: ClassReport::from(&v.class),
            prediction: PredictionReport::from(&v.prediction),
            psi_degree: v.psi_degree,
            empirical: v.empirical.clone(),
            matches: v.matches(),
            regression_demo: uncorrected.map(|u| RegressionDemo::new(u, &v.empirical)),
            oracle: None,
            timings: timing.then(|| TimingReport::from(&v.timings)),
        }
    }

    /// A mismatch of either the theorem or the oracle.
    pub fn mismatch(&self) -> bool {
        self.matches == Some(false) || self.oracle.as_ref().is_some_and(|o| !o.consistent(&self.empirical))
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let i = &self.instance;
        let _ = writeln!(s, "instance     p={} m={} a={} b={} l={}", i.p, i.m, i.a, i.b, i.ell);
        if let Some(m) = &i.modulus {
            let _ = writeln!(s, "modulus      {m:?}");
        }
        let _ = writeln!(s, "curve order  #E={} q={} t={}", self.points, self.q, self.trace);
        let _ = writeln!(s, "class        {}", render_class(&self.class));
        match &self.prediction {
            PredictionReport::Predicted { raw, pattern } => {
                let _ = writeln!(s, "predicted    {pattern}  (raw {})", render_pairs(raw));
            }
            PredictionReport::OutOfScope { reason } => {
                let _ = writeln!(s, "predicted    out of scope: {reason}");
            }
        }
        let _ = writeln!(s, "empirical    {}  (deg psi = {})", self.empirical, self.psi_degree);
        let verdict = match self.matches {
            Some(true) => "yes",
            Some(false) => "NO",
            None => "n/a",
        };
        let _ = writeln!(s, "match        {verdict}");
        if let Some(d) = &self.regression_demo {
            let _ = writeln!(
                s,
                "{}: raw {} = {}, matches empirical: {}",
                d.label,
                render_pairs(&d.raw),
                d.pattern,
                d.matches_empirical
            );
        }
        if let Some(o) = &self.oracle {
            render_oracle(&mut s, o);
        }
        if let Some(t) = &self.timings {
            render_timings(&mut s, t);
        }
        s
    }
}

/// Unmerged entries in the same notation as [`FactorPattern`]'s `Display`.
pub fn render_pairs(raw: &[(usize, usize)]) -> String {
    let body: Vec<String> = raw.iter().map(|(d, c)| format!("({d},{c})")).collect();
    format!("({})", body.join(","))
}

fn render_class(c: &ClassReport) -> String {
    let mut s = format!("{} alpha={}", c.variant, c.alpha);
    if let Some(r) = c.rho {
        let _ = write!(s, " rho={r}");
    }
    if let Some(b) = c.beta {
        let _ = write!(s, " beta={b}");
    }
    let _ = write!(s, " (t mod l = {}, q mod l = {})", c.trace_mod_ell, c.q_mod_ell);
    s
}

fn render_oracle(s: &mut String, o: &OracleSection) {
    let m = &o.matrix.entries;
    let _ = writeln!(s, "oracle       splitting degree N={}", o.splitting_degree);
    let _ = writeln!(s, "  matrix     [[{}, {}], [{}, {}]] mod {}", m[0][0], m[0][1], m[1][0], m[1][1], o.matrix.ell);
    let _ = writeln!(s, "  eigenvalues {:?}", o.eigenvalues);
    let _ = writeln!(s, "  form       {}", render_form(&o.form));
    let _ = writeln!(s, "  orbit pattern {}", o.orbit_pattern);
    let _ = writeln!(s, "  alpha      {}", o.alpha);
    let _ = writeln!(s, "  agrees with class: {}", o.agrees_with_class);
    if let Some(b) = &o.basis {
        let _ = writeln!(s, "  basis over {} (degree {})", b.field, b.field_degree);
        let _ = writeln!(s, "    P = ({}, {})", b.first.x, b.first.y);
        let _ = writeln!(s, "    Q = ({}, {})", b.second.x, b.second.y);
    }
    if let Some(orbits) = &o.orbits {
        for ob in orbits {
            let _ = writeln!(
                s,
                "    R = {:?}: +-degree {}, fixed degree {}",
                ob.coords, ob.pm_degree, ob.fixed_degree
            );
        }
    }
}

pub fn render_form(f: &ConjugacyForm) -> String {
    match f {
        ConjugacyForm::Diagonal { eigenvalues: [r, s], basis } => format!("diag({r}, {s}) via columns {basis:?}"),
        ConjugacyForm::Scalar { rho } => format!("scalar {rho}"),
        ConjugacyForm::Jordan { rho, basis } => format!("[[{rho}, 1], [0, {rho}]] via columns {basis:?}"),
        ConjugacyForm::Irreducible { trace, det, order } => {
            format!("irreducible, X^2 - {trace}X + {det}, order {order}")
        }
    }
}

fn render_timings(s: &mut String, t: &TimingReport) {
    let _ = write!(
        s,
        "timings (us) count={} psi={} classify={} factor={}",
        t.count_us, t.psi_us, t.classify_us, t.factor_us
    );
    if let Some(o) = t.oracle_us {
        let _ = write!(s, " oracle={o}");
    }
    s.push('\n');
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub schema_version: String,
    pub command: String,
    pub instance: InstanceEcho,
    pub trace: i64,
    pub class: ClassReport,
    pub factor_pattern: FactorPattern,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub predicted: Option<FactorPattern>,
    pub oracle: OracleSection,
    pub consistent: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timings: Option<TimingReport>,
}

impl OracleReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let i = &self.instance;
        let _ = writeln!(s, "instance     p={} m={} a={} b={} l={}", i.p, i.m, i.a, i.b, i.ell);
        let _ = writeln!(s, "trace        {}", self.trace);
        let _ = writeln!(s, "class        {}", render_class(&self.class));
        let _ = writeln!(s, "factor pattern {}", self.factor_pattern);
        if let Some(p) = &self.predicted {
            let _ = writeln!(s, "predicted    {p}");
        }
        render_oracle(&mut s, &self.oracle);
        let _ = writeln!(s, "consistent   {}", self.consistent);
        if let Some(t) = &self.timings {
            render_timings(&mut s, t);
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactorEntry {
    pub degree: usize,
    pub multiplicity: usize,
    pub coefficients: Vec<Json>,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactorReport {
    pub schema_version: String,
    pub command: String,
    pub p: u64,
    pub m: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub modulus: Option<Vec<u64>>,
    pub input: String,
    pub leading: Json,
    pub factors: Vec<FactorEntry>,
    pub pattern: FactorPattern,
}

impl FactorReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "field        p={} m={}", self.p, self.m);
        if let Some(m) = &self.modulus {
            let _ = writeln!(s, "modulus      {m:?}");
        }
        let _ = writeln!(s, "input        {}", self.input);
        let _ = writeln!(s, "leading      {}", self.leading);
        for f in &self.factors {
            let _ = writeln!(s, "  ({})^{}", f.text, f.multiplicity);
        }
        let _ = writeln!(s, "pattern      {}", self.pattern);
        s
    }
}

/// One archived scan instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanInstance {
    pub p: u64,
    pub a: u64,
    pub b: u64,
    pub ell: u64,
    pub trace: i64,
    pub class: ClassReport,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub predicted: Option<FactorPattern>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub empirical: Option<FactorPattern>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle_consistent: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassTally {
    pub variant: String,
    pub classified: usize,
    pub verified: usize,
    pub matched: usize,
    pub mismatched: usize,
    pub oracle_checked: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanError {
    pub p: u64,
    pub a: u64,
    pub b: u64,
    pub ell: u64,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub schema_version: String,
    pub command: String,
    pub primes: Vec<u64>,
    pub ells: Vec<u64>,
    pub quota: usize,
    pub oracle: bool,
    pub curves: usize,
    pub instances: usize,
    pub tallies: Vec<ClassTally>,
    pub witnesses: Vec<ScanInstance>,
    pub absent_classes: Vec<String>,
    pub mismatches: Vec<ScanInstance>,
    /// In-scope predictions whose raw entries repeat a degree before merging.
    pub degree_collisions: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub collision_example: Option<ScanInstance>,
    pub errors: Vec<ScanError>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<u64>,
}

impl ScanReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "primes       {:?}", self.primes);
        let _ = writeln!(s, "l set        {:?}", self.ells);
        let _ = writeln!(s, "curves {}  instances {}  quota {}  oracle {}", self.curves, self.instances, self.quota, self.oracle);
        let _ = writeln!(s, "{:<18}{:>11}{:>10}{:>9}{:>12}{:>8}", "class", "classified", "verified", "matched", "mismatched", "oracle");
        for t in &self.tallies {
            let _ = writeln!(
                s,
                "{:<18}{:>11}{:>10}{:>9}{:>12}{:>8}",
                t.variant, t.classified, t.verified, t.matched, t.mismatched, t.oracle_checked
            );
        }
        for w in &self.witnesses {
            let _ = writeln!(s, "witness      {}", render_instance(w));
        }
        for a in &self.absent_classes {
            let _ = writeln!(s, "absent       {a}: no instance in range");
        }
        let _ = writeln!(s, "degree collisions in raw predictions: {}", self.degree_collisions);
        if let Some(w) = &self.collision_example {
            let _ = writeln!(s, "  e.g. {}", render_instance(w));
        }
        let _ = writeln!(s, "mismatches   {}", self.mismatches.len());
        for m in &self.mismatches {
            let _ = writeln!(s, "  {}", render_instance(m));
        }
        let _ = writeln!(s, "errors       {}", self.errors.len());
        for e in &self.errors {
            let _ = writeln!(s, "  p={} a={} b={} l={}: {}", e.p, e.a, e.b, e.ell, e.message);
        }
        if let Some(ms) = self.elapsed_ms {
            let _ = writeln!(s, "elapsed      {ms} ms");
        }
        s
    }
}

fn render_instance(w: &ScanInstance) -> String {
    let mut s = format!("p={} a={} b={} l={} t={} {}", w.p, w.a, w.b, w.ell, w.trace, render_class(&w.class));
    if let Some(p) = &w.predicted {
        let _ = write!(s, " predicted {p}");
    }
    if let Some(e) = &w.empirical {
        let _ = write!(s, " empirical {e}");
    }
    s
}
