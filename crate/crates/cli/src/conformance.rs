//! Sweeps that re-check the library's invariants over every prime up to a bound.
//!
//! Each prime is processed independently (in parallel) and the partial results
//! are merged in ascending order of the prime, so a report depends only on its
//! inputs.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use qnrforge_core::arith::{euler_phi, is_prime, mul_mod, primes_up_to, two_adic_split};
use qnrforge_core::cyclo::{
    closed_form_coperiod_quartic, closed_form_period_quadratic, factor_degree_check,
    link_period_coperiod, period_polynomial, period_spec, quadratic_partition, IntegerPolynomial,
    LinkDirection,
};
use qnrforge_core::irrpoly::{binomial_tower, mobius_generate, MobiusMap};
use qnrforge_core::qnr::{default_kmax, RejectReason};
use qnrforge_core::roots::{cipolla_sum, tonelli_shanks};
use qnrforge_core::symbols::{euler_criterion, jacobi, least_qnr, qnr_spaced_pair};
use qnrforge_core::tracemat::classify_trace_determinant;
use qnrforge_core::{
    qnr_auto, qnr_general, qnr_least, qnr_special, rabin_irreducible, Error, FieldDescriptor, FpPoly,
    SymbolValue,
};

/// Upper limits on the prime for the checks whose cost grows quickly.
pub const TRACE_QUADRATIC_LIMIT: u64 = 200;
pub const TRACE_CUBIC_LIMIT: u64 = 50;
pub const DEGREES_LIMIT: u64 = 60;
pub const JACOBI_LIMIT: u64 = 2000;
pub const ROOTS_LIMIT: u64 = 2000;
pub const ROOT_SUM_LIMIT: u64 = 500;
pub const ROOT_SUM_MAX_TWO_ADIC: u32 = 8;
pub const PAIRS_LIMIT: u64 = 2000;
pub const IRR_LIMIT: u64 = 200;
pub const MOBIUS_LIMIT: u64 = 50;
pub const MOBIUS_MAPS: usize = 50;
pub const PERIODS_LIMIT: u64 = 300;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    /// All four nonresidue methods, plus the special-path histogram.
    Qnr,
    /// Trace-determinant classification of irreducible quadratics and cubics.
    Trace,
    /// Factor degrees of period polynomials modulo small primes.
    Degrees,
    Jacobi,
    /// Tonelli-Shanks and the closed-form root sum.
    Roots,
    /// Spaced nonresidue pairs.
    Pairs,
    /// Binomial towers and linear fractional transforms.
    Irr,
    /// Closed forms and the period/coperiod link.
    Periods,
}

impl Check {
    pub const ALL: [Check; 8] = [
        Check::Qnr,
        Check::Trace,
        Check::Degrees,
        Check::Jacobi,
        Check::Roots,
        Check::Pairs,
        Check::Irr,
        Check::Periods,
    ];
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub total: u64,
    pub pass: u64,
    pub fail: u64,
}

impl Tally {
    fn add(&mut self, ok: bool) {
        self.total += 1;
        if ok {
            self.pass += 1;
        } else {
            self.fail += 1;
        }
    }

    fn merge(&mut self, other: &Tally) {
        self.total += other.total;
        self.pass += other.pass;
        self.fail += other.fail;
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RejectionCounts {
    pub non_constant_d: u64,
    pub degenerate_tau: u64,
    pub not_verified: u64,
    pub exceeds_cap: u64,
}

impl RejectionCounts {
    fn merge(&mut self, other: &RejectionCounts) {
        self.non_constant_d += other.non_constant_d;
        self.degenerate_tau += other.degenerate_tau;
        self.not_verified += other.not_verified;
        self.exceeds_cap += other.exceeds_cap;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Anomaly {
    pub check: String,
    pub input: String,
    pub expected: String,
    pub observed: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LeastStats {
    pub max: u64,
    pub argmax: u64,
    pub mean: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConformanceReport {
    pub max_prime: u64,
    pub checks: Vec<Check>,
    /// Odd primes swept.
    pub primes: u64,
    /// Pass/fail counts; any failure is also listed under `anomalies`.
    pub tallies: BTreeMap<String, Tally>,
    /// Measured rates that are reported but not asserted.
    pub observations: BTreeMap<String, Tally>,
    /// Special-path rejections keyed by conductor.
    pub special_rejections: BTreeMap<u64, RejectionCounts>,
    pub least_qnr: Option<LeastStats>,
    pub anomalies: Vec<Anomaly>,
}

impl ConformanceReport {
    pub fn has_anomalies(&self) -> bool {
        !self.anomalies.is_empty()
    }

    pub fn tally(&self, key: &str) -> Tally {
        self.tallies.get(key).copied().unwrap_or_default()
    }
}

#[derive(Default)]
struct Partial {
    tallies: BTreeMap<String, Tally>,
    observations: BTreeMap<String, Tally>,
    rejections: BTreeMap<u64, RejectionCounts>,
    least: Vec<(u64, u64)>,
    anomalies: Vec<Anomaly>,
}

impl Partial {
    /// Tallies `ok` under `key`; a failure also records an anomaly built from `detail`.
    fn check(&mut self, key: &str, ok: bool, detail: impl FnOnce() -> (String, String, String)) {
        self.tallies.entry(key.to_string()).or_default().add(ok);
        if !ok {
            let (input, expected, observed) = detail();
            self.anomalies.push(Anomaly { check: key.to_string(), input, expected, observed });
        }
    }

    fn observe(&mut self, key: &str, hit: bool) {
        self.observations.entry(key.to_string()).or_default().add(hit);
    }

    fn merge(&mut self, other: Partial) {
        for (k, t) in &other.tallies {
            self.tallies.entry(k.clone()).or_default().merge(t);
        }
        for (k, t) in &other.observations {
            self.observations.entry(k.clone()).or_default().merge(t);
        }
        for (r, c) in &other.rejections {
            self.rejections.entry(*r).or_default().merge(c);
        }
        self.least.extend(other.least);
        self.anomalies.extend(other.anomalies);
    }
}

fn err_detail(input: String, expected: &str, err: &Error) -> (String, String, String) {
    (input, expected.to_string(), format!("error: {err}"))
}

fn sweep_qnr(p: u64, out: &mut Partial) {
    let desc = FieldDescriptor::prime(p).expect("odd prime");
    let input = || format!("p = {p}");
    let sound = |v: u64| euler_criterion(v, p) == Ok(SymbolValue::MinusOne);

    match qnr_auto(&desc) {
        Ok(c) => out.check("qnr.auto", c.verified && sound(c.value), || {
            (input(), "nonresidue".into(), c.value.to_string())
        }),
        Err(e) => out.check("qnr.auto", false, || err_detail(input(), "nonresidue", &e)),
    }

    match qnr_general(&desc) {
        Ok(c) => {
            out.check("qnr.general", c.verified && sound(c.value), || {
                (input(), "nonresidue".into(), c.value.to_string())
            });
            let reducible: Vec<u64> = c
                .transcript
                .rejections
                .iter()
                .filter(|x| x.reason == RejectReason::Reducible)
                .map(|x| x.r)
                .collect();
            out.check("general.screened_irreducible", reducible.is_empty(), || {
                (input(), "irreducible period polynomial".into(), format!("reducible at r = {reducible:?}"))
            });
        }
        Err(e) => out.check("qnr.general", false, || err_detail(input(), "nonresidue", &e)),
    }

    match qnr_least(&desc) {
        Ok(c) => {
            out.check("qnr.least", sound(c.value), || (input(), "nonresidue".into(), c.value.to_string()));
            out.least.push((p, c.value));
        }
        Err(e) => out.check("qnr.least", false, || err_detail(input(), "nonresidue", &e)),
    }

    let (ok, accepted) = match qnr_special(&desc, default_kmax(&desc)) {
        Ok(c) => {
            for rej in &c.transcript.rejections {
                count_rejection(out, rej.r, &rej.reason);
            }
            let (r, d) = (c.r.unwrap_or(0), c.d.unwrap_or(0));
            out.observe("special.accepted_full_order", d == euler_phi(r));
            if p % 3 == 2 {
                out.check("special.minus_three", c.value == p - 3 && r == 3, || {
                    (input(), format!("{} via r = 3", p - 3), format!("{} via r = {r}", c.value))
                });
            }
            let ok = c.verified && sound(c.value);
            if !ok {
                out.anomalies.push(Anomaly {
                    check: "qnr.special".into(),
                    input: input(),
                    expected: "nonresidue".into(),
                    observed: c.value.to_string(),
                });
            }
            (ok, true)
        }
        Err(Error::FallbackExhausted { rejections }) => {
            for rej in &rejections {
                count_rejection(out, rej.r, &rej.reason);
            }
            if p % 3 == 2 {
                out.check("special.minus_three", false, || {
                    (input(), format!("{} via r = 3", p - 3), "fallback exhausted".into())
                });
            }
            (true, false)
        }
        Err(e) => {
            out.anomalies.push(Anomaly {
                check: "qnr.special".into(),
                input: input(),
                expected: "nonresidue or exhausted transcript".into(),
                observed: format!("error: {e}"),
            });
            (false, false)
        }
    };
    out.tallies.entry("qnr.special".into()).or_default().add(ok);
    out.observe("special.accepted", accepted);
}

fn count_rejection(out: &mut Partial, r: u64, reason: &RejectReason) {
    let c = out.rejections.entry(r).or_default();
    match reason {
        RejectReason::NonConstantD { .. } => c.non_constant_d += 1,
        RejectReason::DegenerateTau => c.degenerate_tau += 1,
        RejectReason::NotVerified { .. } => c.not_verified += 1,
        RejectReason::ExceedsCap { .. } => c.exceeds_cap += 1,
        _ => {}
    }
}

/// Monic polynomials of the given degree over `F_p`, in counting order of
/// their lower coefficients.
fn monic_polys(p: u64, degree: usize) -> impl Iterator<Item = FpPoly> {
    let count = p.pow(degree as u32);
    (0..count).map(move |mut idx| {
        let mut coeffs = Vec::with_capacity(degree + 1);
        for _ in 0..degree {
            coeffs.push(idx % p);
            idx /= p;
        }
        coeffs.push(1);
        FpPoly::new(p, coeffs)
    })
}

fn sweep_trace(p: u64, out: &mut Partial) {
    let mut run = |key: &str, degree: usize| {
        for f in monic_polys(p, degree).filter(rabin_irreducible) {
            match classify_trace_determinant(&f) {
                Ok(c) => out.check(key, c.pass, || {
                    (format!("p = {p}, f = {f}"), format!("{:?}", c.predicted), format!("{:?}", c.verified))
                }),
                Err(e) => out.check(key, false, || err_detail(format!("p = {p}, f = {f}"), "classification", &e)),
            }
        }
    };
    if p < TRACE_QUADRATIC_LIMIT {
        run("trace.quadratic", 2);
    }
    if p < TRACE_CUBIC_LIMIT {
        run("trace.cubic", 3);
    }
}

fn sweep_degrees(q: u64, out: &mut Partial) {
    for r in primes_up_to(DEGREES_LIMIT - 1) {
        if r == q {
            continue;
        }
        for d in [2u64, 4] {
            if (r - 1) % d != 0 {
                continue;
            }
            let input = || format!("r = {r}, q = {q}, d = {d}");
            let result = period_spec(r, d).and_then(|spec| factor_degree_check(r, q, &spec));
            match result {
                Ok(c) => out.check("degrees", c.pass, || {
                    (input(), format!("lcm {}", c.predicted), format!("degrees {:?}", c.degrees))
                }),
                Err(e) => out.check("degrees", false, || err_detail(input(), "factor degrees", &e)),
            }
        }
    }
}

fn sweep_jacobi(p: u64, out: &mut Partial) {
    let bad = (1..p).find(|&a| jacobi(a as i64, p).ok() != euler_criterion(a, p).ok());
    out.check("jacobi", bad.is_none(), || {
        let a = bad.unwrap();
        (format!("a = {a}, p = {p}"), format!("{:?}", euler_criterion(a, p)), format!("{:?}", jacobi(a as i64, p)))
    });
}

fn sweep_roots(p: u64, out: &mut Partial) {
    let z = match qnr_auto(&FieldDescriptor::prime(p).unwrap()) {
        Ok(c) => c.value,
        Err(e) => {
            out.check("roots.tonelli", false, || err_detail(format!("p = {p}"), "nonresidue", &e));
            return;
        }
    };
    let residues: Vec<u64> = (1..p).filter(|&a| euler_criterion(a, p) == Ok(SymbolValue::PlusOne)).collect();
    let bad = residues.iter().copied().find(|&a| match tonelli_shanks(a, p, z) {
        Ok(s) => mul_mod(s.root, s.root, p) != a,
        Err(_) => true,
    });
    out.check("roots.tonelli", bad.is_none(), || {
        (format!("a = {}, p = {p}", bad.unwrap()), "root".into(), "no valid root".into())
    });

    let (_, k) = two_adic_split(p);
    if p >= ROOT_SUM_LIMIT || k > ROOT_SUM_MAX_TWO_ADIC {
        return;
    }
    for &a in &residues {
        let input = || format!("a = {a}, p = {p}, z = {z}");
        let expected = tonelli_shanks(a, p, z).unwrap();
        match cipolla_sum(a, p, z) {
            Ok(out_sum) => {
                let valid = mul_mod(out_sum.result.root, out_sum.result.root, p) == a;
                out.check("roots.sum_valid", valid, || (input(), "root".into(), out_sum.result.root.to_string()));
                out.check("roots.sum_agrees", !out_sum.fell_back && out_sum.result == expected, || {
                    (input(), format!("±{}", expected.root), format!("sum gave {}", out_sum.sum_value))
                });
            }
            Err(e) => out.check("roots.sum_valid", false, || err_detail(input(), "root", &e)),
        }
    }
}

fn sweep_pairs(p: u64, out: &mut Partial) {
    let z = least_qnr(p).unwrap();
    for i in 1..=20u64 {
        let s = mul_mod(i, i, p);
        if s == 0 {
            continue;
        }
        for v in 1..=3u64 {
            if v % p == 0 {
                continue;
            }
            let input = || format!("z = {z}, s = {s}, v = {v}, p = {p}");
            match qnr_spaced_pair(z, s, v, p) {
                Ok((a, b)) => {
                    let ok = euler_criterion(a, p) == Ok(SymbolValue::MinusOne)
                        && euler_criterion(b, p) == Ok(SymbolValue::MinusOne);
                    out.check("pairs", ok, || (input(), "two nonresidues".into(), format!("({a}, {b})")));
                }
                Err(Error::DegeneratePair { .. }) => out.observe("pairs.degenerate", true),
                Err(e) => out.check("pairs", false, || err_detail(input(), "two nonresidues", &e)),
            }
        }
    }
}

/// The first `count` monic irreducibles of the given degree in counting order.
fn irreducible_list(p: u64, degree: usize, count: usize) -> Vec<FpPoly> {
    monic_polys(p, degree).filter(rabin_irreducible).take(count).collect()
}

fn random_map(rng: &mut ChaCha8Rng, p: u64) -> MobiusMap {
    loop {
        let m = MobiusMap::new(rng.gen_range(0..p), rng.gen_range(0..p), rng.gen_range(0..p), rng.gen_range(0..p));
        if m.det(p) != 0 {
            return m;
        }
    }
}

fn sweep_irr(p: u64, out: &mut Partial) {
    let desc = FieldDescriptor::prime(p).unwrap();
    let z = qnr_auto(&desc).map(|c| c.value);
    for e in 1..=3u32 {
        let input = || format!("q = {p}, e = {e}");
        match z.clone().and_then(|z| binomial_tower(&desc, e, z)) {
            Ok(f) => out.check("irr.tower", f.degree() == Some(1 << e) && rabin_irreducible(&f), || {
                (input(), "irreducible".into(), f.to_string())
            }),
            Err(err) => out.check("irr.tower", false, || err_detail(input(), "irreducible", &err)),
        }
    }
    if p >= MOBIUS_LIMIT {
        return;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p);
    let mut polys = irreducible_list(p, 2, 3);
    polys.extend(irreducible_list(p, 3, 3));
    for _ in 0..MOBIUS_MAPS {
        let map = random_map(&mut rng, p);
        for f in &polys {
            let input = || format!("p = {p}, f = {f}, map = {map:?}");
            match mobius_generate(f, &map) {
                Ok(g) => out.check("irr.mobius", rabin_irreducible(&g) && g.degree() == f.degree(), || {
                    (input(), "irreducible".into(), g.to_string())
                }),
                Err(e) => out.check("irr.mobius", false, || err_detail(input(), "irreducible", &e)),
            }
        }
    }
}

fn sweep_periods(r: u64, out: &mut Partial) {
    let input = || format!("r = {r}");
    let psi2 = match period_polynomial(r, 2) {
        Ok(psi) => psi,
        Err(e) => {
            out.check("periods.quadratic", false, || err_detail(input(), "period polynomial", &e));
            return;
        }
    };
    let closed = closed_form_period_quadratic(r);
    out.check("periods.quadratic", closed.as_ref() == Ok(&psi2), || {
        (input(), psi2.to_string(), format!("{closed:?}"))
    });

    let star = if r % 4 == 1 { r as i64 } else { -(r as i64) };
    let theta2 = link_period_coperiod(&psi2, 2, LinkDirection::PeriodToCoperiod);
    let back = theta2.as_ref().ok().map(|t| link_period_coperiod(t, 2, LinkDirection::CoperiodToPeriod));
    let expected = IntegerPolynomial::from_i64(&[-star, 0, 1]);
    out.check("periods.link_quadratic", theta2.as_ref() == Ok(&expected) && back == Some(Ok(psi2.clone())), || {
        (input(), expected.to_string(), format!("{theta2:?}"))
    });

    if r % 4 != 1 {
        return;
    }
    let result = period_polynomial(r, 4).and_then(|psi4| {
        let theta4 = link_period_coperiod(&psi4, 4, LinkDirection::PeriodToCoperiod)?;
        let back = link_period_coperiod(&theta4, 4, LinkDirection::CoperiodToPeriod)?;
        let closed = closed_form_coperiod_quartic(r, &quadratic_partition(r)?)?;
        Ok((psi4, theta4, back, closed))
    });
    match result {
        Ok((psi4, theta4, back, closed)) => {
            out.check("periods.quartic", theta4 == closed && back == psi4, || {
                (input(), closed.to_string(), theta4.to_string())
            });
        }
        Err(e) => out.check("periods.quartic", false, || err_detail(input(), "quartic coperiod", &e)),
    }
}

fn sweep_prime(p: u64, checks: &[Check]) -> Partial {
    let mut out = Partial::default();
    for check in checks {
        match check {
            Check::Qnr => sweep_qnr(p, &mut out),
            Check::Trace => sweep_trace(p, &mut out),
            Check::Degrees if p < DEGREES_LIMIT => sweep_degrees(p, &mut out),
            Check::Jacobi if p < JACOBI_LIMIT => sweep_jacobi(p, &mut out),
            Check::Roots if p < ROOTS_LIMIT => sweep_roots(p, &mut out),
            Check::Pairs if p < PAIRS_LIMIT => sweep_pairs(p, &mut out),
            Check::Irr if p < IRR_LIMIT => sweep_irr(p, &mut out),
            Check::Periods if p < PERIODS_LIMIT => sweep_periods(p, &mut out),
            _ => {}
        }
    }
    out
}

/// Runs the selected checks over every odd prime `p <= max_prime`. The
/// costlier checks stop at their own limits (see the constants above).
pub fn run_conformance(max_prime: u64, checks: &[Check]) -> ConformanceReport {
    let mut checks: Vec<Check> = if checks.is_empty() { Check::ALL.to_vec() } else { checks.to_vec() };
    checks.sort_unstable();
    checks.dedup();
    let primes: Vec<u64> = primes_up_to(max_prime).into_iter().filter(|&p| p > 2).collect();
    debug_assert!(primes.iter().all(|&p| is_prime(p)));
    let partials: Vec<Partial> = primes.par_iter().map(|&p| sweep_prime(p, &checks)).collect();
    let mut total = Partial::default();
    for part in partials {
        total.merge(part);
    }
    let least_qnr = (!total.least.is_empty()).then(|| {
        let (argmax, max) = total.least.iter().copied().max_by_key(|&(p, z)| (z, std::cmp::Reverse(p))).unwrap();
        let mean = total.least.iter().map(|&(_, z)| z as f64).sum::<f64>() / total.least.len() as f64;
        LeastStats { max, argmax, mean }
    });
    ConformanceReport {
        max_prime,
        checks,
        primes: primes.len() as u64,
        tallies: total.tallies,
        observations: total.observations,
        special_rejections: total.rejections,
        least_qnr,
        anomalies: total.anomalies,
    }
}
