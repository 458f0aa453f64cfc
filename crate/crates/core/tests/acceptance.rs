//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use psipattern::curve::Curve;
use psipattern::divpoly::psi;
use psipattern::ff::make_prime_field;
use psipattern::frobclass::{classify, classify_with, FrobeniusKind};
use psipattern::oracle::{check_against_trace, run_oracle};
use psipattern::pattern::{h_func, predict, PredictionOutcome};
use psipattern::poly::{factor, is_irreducible, pattern_of, FactorPattern, Polynomial};
use psipattern::report::ScanReport;

const SWEEP_PRIMES: [u64; 13] = [5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];
const EXAMPLE_BUDGET: Duration = Duration::from_secs(1);

type Verdict = Result<String, String>;

fn example_curve() -> Curve {
    Curve::from_ints(&make_prime_field(17).unwrap(), 3, 6).unwrap()
}

fn criterion_1() -> Verdict {
    let t0 = Instant::now();
    let c = example_curve();
    let fc = classify(&c, 5).map_err(|e| e.to_string())?;
    let (alpha, beta) = match fc.kind {
        FrobeniusKind::SplitDistinct { alpha, beta, .. } => (alpha, beta),
        other => return Err(format!("class {other:?}")),
    };
    let predicted = predict(&fc).map_err(|e| e.to_string())?;
    let predicted = predicted.pattern().ok_or("out of scope")?.clone();
    let empirical = pattern_of(&factor(&psi(&c, 5).unwrap().xpart, 0).unwrap());
    let elapsed = t0.elapsed();
    let want = FactorPattern::from(vec![(1, 2), (2, 1), (4, 2)]);
    let detail = format!("alpha={alpha} beta={beta} predicted={predicted} empirical={empirical} in {elapsed:?}");
    if (alpha, beta) == (2, 4) && predicted == want && empirical == want && elapsed < EXAMPLE_BUDGET {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_2() -> Verdict {
    let c = example_curve();
    let fc = classify(&c, 5).map_err(|e| e.to_string())?;
    let p = predict(&fc).map_err(|e| e.to_string())?;
    let old = p.prediction().and_then(|p| p.uncorrected.clone()).ok_or("no uncorrected variant reported")?;
    let empirical = pattern_of(&factor(&psi(&c, 5).unwrap().xpart, 0).unwrap());
    let detail = format!("uncorrected raw={:?} merged={} empirical={empirical}", old.raw, old.pattern);
    if old.raw == vec![(1, 2), (2, 1), (2, 4)] && old.pattern != empirical {
        Ok(detail)
    } else {
        Err(detail)
    }
}

struct SweepRow {
    p: u64,
    a: u64,
    b: u64,
    ell: u64,
    psi_degree: usize,
    outcome: PredictionOutcome,
    empirical: FactorPattern,
}

fn sweep() -> Vec<Result<SweepRow, String>> {
    let curves: Vec<(u64, u64, u64)> =
        SWEEP_PRIMES.iter().flat_map(|&p| (0..p).flat_map(move |a| (0..p).map(move |b| (p, a, b)))).collect();
    curves
        .par_iter()
        .flat_map_iter(|&(p, a, b)| {
            let k = make_prime_field(p).unwrap();
            let c = Curve::from_ints(&k, a as i64, b as i64).ok();
            let order = c.as_ref().map(|c| c.count_points().unwrap());
            [3u64, 5, 7].into_iter().filter(move |&l| l != p).filter_map(move |ell| {
                let c = c.as_ref()?;
                let order = order.as_ref()?;
                Some((|| {
                    let psi_x = psi(c, ell as usize)?.xpart;
                    let outcome = predict(&classify_with(c, ell, order, &psi_x)?)?;
                    let empirical = pattern_of(&factor(&psi_x, 0)?);
                    Ok(SweepRow { p, a, b, ell, psi_degree: psi_x.degree().unwrap_or(0), outcome, empirical })
                })()
                .map_err(|e: psipattern::error::Error| format!("p={p} a={a} b={b} l={ell}: {e}")))
            })
        })
        .collect()
}

fn criterion_3(rows: &[Result<SweepRow, String>]) -> Verdict {
    let mut checked = 0;
    let mut failures = vec![];
    for r in rows {
        match r {
            Err(e) => failures.push(e.clone()),
            Ok(r) => {
                if let Some(pred) = r.outcome.pattern() {
                    checked += 1;
                    if pred != &r.empirical {
                        failures.push(format!("p={} a={} b={} l={}: {pred} vs {}", r.p, r.a, r.b, r.ell, r.empirical));
                    }
                }
            }
        }
    }
    let detail = format!("{checked} in-scope instances, {} exceptions", failures.len());
    if failures.is_empty() && checked > 0 { Ok(detail) } else { Err(format!("{detail}; first: {:?}", failures.first())) }
}

fn criterion_4(rows: &[Result<SweepRow, String>]) -> Verdict {
    let mut bad = vec![];
    let mut n = 0;
    for r in rows.iter().flatten() {
        n += 1;
        let want = ((r.ell * r.ell - 1) / 2) as usize;
        let pred_ok = r.outcome.pattern().is_none_or(|p| p.degree_sum() == want);
        if r.psi_degree != want || r.empirical.degree_sum() != want || !pred_ok {
            bad.push((r.p, r.a, r.b, r.ell));
        }
    }
    let detail = format!("{n} division polynomials, {} violations", bad.len());
    if bad.is_empty() && n > 0 { Ok(detail) } else { Err(format!("{detail}; first {:?}", bad.first())) }
}

fn criterion_5() -> Verdict {
    let primes: Vec<u64> = (5..=100).filter(|&p| psipattern::ff::is_prime(p)).collect();
    let curves: Vec<(u64, u64, u64)> =
        primes.iter().flat_map(|&p| (0..p).flat_map(move |a| (0..p).map(move |b| (p, a, b)))).collect();
    let results: Vec<Option<String>> = curves
        .par_iter()
        .flat_map_iter(|&(p, a, b)| {
            let k = make_prime_field(p).unwrap();
            let c = Curve::from_ints(&k, a as i64, b as i64).ok();
            [3u64, 5].into_iter().filter(move |&l| l != p).filter_map(move |ell| {
                let c = c.as_ref()?;
                let check = || -> Result<Option<String>, psipattern::error::Error> {
                    let order = c.count_points()?;
                    let psi_x = psi(c, ell as usize)?.xpart;
                    let fc = classify_with(c, ell, &order, &psi_x)?;
                    let predicted = predict(&fc)?;
                    let empirical = pattern_of(&factor(&psi_x, 0)?);
                    let run = run_oracle(c, ell, 0)?;
                    check_against_trace(&run.matrix, order.trace, order.q)?;
                    let ok = run.pattern == empirical
                        && predicted.pattern().is_none_or(|p| p == &run.pattern)
                        && run.form.agrees_with(&fc)
                        && run.alpha() as u64 == fc.kind.alpha();
                    Ok((!ok).then(|| format!("p={p} a={a} b={b} l={ell}: {fc} vs {:?}", run.form)))
                };
                Some(check().unwrap_or_else(|e| Some(format!("p={p} a={a} b={b} l={ell}: {e}"))))
            })
        })
        .collect();
    let failures: Vec<&String> = results.iter().flatten().collect();
    let detail = format!("{} oracle instances over {} primes, {} disagreements", results.len(), primes.len(), failures.len());
    if failures.is_empty() { Ok(detail) } else { Err(format!("{detail}; first: {}", failures[0])) }
}

fn criterion_6() -> Verdict {
    let o = psipattern::cli::execute([
        "psipattern", "scan", "--p-min", "5", "--p-max", "47", "--l-set", "3,5,7", "--json", "--no-timing",
    ]);
    if o.code != 0 {
        return Err(format!("scan exited {}: {}", o.code, o.stderr));
    }
    let r: ScanReport = serde_json::from_str(&o.stdout).map_err(|e| e.to_string())?;
    let found: Vec<&str> = r.witnesses.iter().map(|w| w.class.variant.as_str()).collect();
    let detail = format!("witnesses {found:?}; reported absent {:?}", r.absent_classes);
    let mandatory = found.contains(&"SplitDistinct") && found.contains(&"Jordan");
    if mandatory && found.len() + r.absent_classes.len() == 5 { Ok(detail) } else { Err(detail) }
}

/// Factorization by trial division with monic polynomials in increasing degree,
/// so every divisor found is irreducible.
fn trial_division(f: &Polynomial) -> BTreeMap<Vec<u64>, usize> {
    let k = f.field().clone();
    let p = k.characteristic();
    let mut rest = f.monic();
    let mut out = BTreeMap::new();
    for d in 1..=f.degree().unwrap() {
        for idx in 0..p.pow(d as u32) {
            let mut cs: Vec<i64> = (0..d).map(|i| ((idx / p.pow(i as u32)) % p) as i64).collect();
            cs.push(1);
            let g = Polynomial::from_ints(&k, &cs);
            while rest.degree().unwrap() > 0 && rest.divrem(&g).unwrap().1.is_zero() {
                rest = rest.exact_div(&g).unwrap();
                *out.entry(cs.iter().map(|&c| c as u64).collect()).or_default() += 1;
            }
        }
    }
    out
}

fn criterion_7() -> Verdict {
    let k31 = make_prime_field(31).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x7e57);
    let mut bad = vec![];
    for i in 0..1000 {
        let deg = rng.gen_range(1..=12);
        let f = Polynomial::random(&k31, deg, &mut rng);
        if f.is_zero() || f.degree() == Some(0) {
            continue;
        }
        let fz = factor(&f, i).unwrap();
        let ok = fz.expand() == f && fz.factors.iter().all(|(g, _)| is_irreducible(g).unwrap());
        if !ok {
            bad.push(f.to_string());
        }
    }
    let k5 = make_prime_field(5).unwrap();
    let mut cubics = 0;
    for idx in 0..125u64 {
        let cs = [(idx % 5) as i64, ((idx / 5) % 5) as i64, ((idx / 25) % 5) as i64, 1];
        let f = Polynomial::from_ints(&k5, &cs);
        let fz = factor(&f, idx).unwrap();
        let mine: BTreeMap<Vec<u64>, usize> = fz
            .factors
            .iter()
            .map(|(g, e)| (g.coefficients().iter().map(|c| c.as_u64().unwrap()).collect(), *e))
            .collect();
        if mine != trial_division(&f) {
            bad.push(f.to_string());
        }
        cubics += 1;
    }
    let detail = format!("1000 random polynomials over F_31 and {cubics} monic cubics over F_5, {} failures", bad.len());
    if bad.is_empty() { Ok(detail) } else { Err(format!("{detail}; first {}", bad[0])) }
}

fn criterion_8(rows: &[Result<SweepRow, String>]) -> Verdict {
    let mut n = 0;
    let mut bad = vec![];
    for r in rows.iter().flatten() {
        let Some(pred) = r.outcome.prediction() else { continue };
        let FrobeniusKind::Jordan { alpha, .. } = pred.class.kind else { continue };
        n += 1;
        let h = h_func(alpha) as usize;
        let c = (r.ell as usize - 1) / (2 * h);
        if r.empirical != FactorPattern::from_entries([(h, c), (h * r.ell as usize, c)]) {
            bad.push(format!("p={} a={} b={} l={}: {}", r.p, r.a, r.b, r.ell, r.empirical));
        }
    }
    let detail = format!("{n} Jordan instances, {} deviations", bad.len());
    if bad.is_empty() && n > 0 { Ok(detail) } else { Err(format!("{detail}; first {:?}", bad.first())) }
}

fn main() {
    let mut failed = 0;
    let mut report = |n: u32, name: &str, t0: Instant, v: Verdict| {
        let (tag, detail) = match v {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} criterion {n} ({name}): {detail} [{:.1?}]", t0.elapsed());
    };
    let t = Instant::now();
    report(1, "worked example", t, criterion_1());
    let t = Instant::now();
    report(2, "uncorrected i witness", t, criterion_2());
    let t = Instant::now();
    let rows = sweep();
    report(3, "theorem sweep", t, criterion_3(&rows));
    let t = Instant::now();
    report(4, "degree sums", t, criterion_4(&rows));
    let t = Instant::now();
    report(5, "oracle agreement q <= 100", t, criterion_5());
    let t = Instant::now();
    report(6, "class coverage", t, criterion_6());
    let t = Instant::now();
    report(7, "factorization self-test", t, criterion_7());
    let t = Instant::now();
    report(8, "Jordan degrees h(alpha)*l", t, criterion_8(&rows));
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
