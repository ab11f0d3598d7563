//! Acceptance gate. Runs as a plain binary so the per-criterion lines always
//! print; exits non-zero if any criterion fails.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use qnrforge::bench_randomized;
use qnrforge_core::arith::{mul_mod, primes_up_to, two_adic_split};
use qnrforge_core::cyclo::{
    closed_form_coperiod_quartic, closed_form_period_quadratic, factor_degree_check,
    link_period_coperiod, period_polynomial, period_spec, quadratic_partition, IntegerPolynomial,
    LinkDirection,
};
use qnrforge_core::irrpoly::{binomial_tower, mobius_generate, MobiusMap};
use qnrforge_core::qnr::{default_kmax, find_period_parameters};
use qnrforge_core::roots::{cipolla_sum, tonelli_shanks};
use qnrforge_core::symbols::{euler_criterion, jacobi, least_qnr, qnr_spaced_pair};
use qnrforge_core::tracemat::classify_trace_determinant;
use qnrforge_core::{
    qnr_auto, qnr_general, qnr_special, rabin_irreducible, Error, FieldDescriptor, FpPoly, SymbolValue,
};

const SEED: u64 = 20240601;

struct Outcome {
    ok: bool,
    detail: String,
}

fn odd_primes_below(n: u64) -> Vec<u64> {
    primes_up_to(n - 1).into_iter().filter(|&p| p > 2).collect()
}

fn prime_field(p: u64) -> FieldDescriptor {
    FieldDescriptor::prime(p).unwrap()
}

fn is_nonresidue(z: u64, p: u64) -> bool {
    euler_criterion(z, p) == Ok(SymbolValue::MinusOne)
}

fn monic_polys(p: u64, degree: usize) -> impl Iterator<Item = FpPoly> {
    (0..p.pow(degree as u32)).map(move |mut idx| {
        let mut c = Vec::with_capacity(degree + 1);
        for _ in 0..degree {
            c.push(idx % p);
            idx /= p;
        }
        c.push(1);
        FpPoly::new(p, c)
    })
}

/// Collects the failing inputs of a parallel sweep.
fn failures<T: Sync, F>(items: &[T], check: F) -> Vec<String>
where
    F: Fn(&T) -> Result<(), String> + Sync,
{
    items.par_iter().filter_map(|t| check(t).err()).collect()
}

fn fail_if(bad: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if bad {
        Err(msg())
    } else {
        Ok(())
    }
}

fn summarize(total: usize, bad: Vec<String>, what: &str) -> Outcome {
    let ok = bad.is_empty();
    let detail = if ok {
        format!("{total} {what}, all pass")
    } else {
        format!("{} of {total} {what} fail, first: {}", bad.len(), bad[0])
    };
    Outcome { ok, detail }
}

fn soundness() -> Outcome {
    let primes = odd_primes_below(10_000);
    let bad = failures(&primes, |&p| {
        let desc = prime_field(p);
        let results = [
            ("auto", qnr_auto(&desc).map(|c| c.value)),
            ("general", qnr_general(&desc).map(|c| c.value)),
            ("least", least_qnr(p)),
        ];
        for (name, r) in results {
            match r {
                Ok(z) if is_nonresidue(z, p) => {}
                Ok(z) => return Err(format!("{name} p = {p} gave {z}")),
                Err(e) => return Err(format!("{name} p = {p}: {e}")),
            }
        }
        Ok(())
    });
    summarize(primes.len(), bad, "primes x 3 methods")
}

fn special_path() -> Outcome {
    let primes = odd_primes_below(10_000);
    let results: Vec<(bool, Option<String>)> = primes
        .par_iter()
        .map(|&p| {
            let desc = prime_field(p);
            match qnr_special(&desc, default_kmax(&desc)) {
                Ok(c) => {
                    if !c.verified || !is_nonresidue(c.value, p) {
                        return (true, Some(format!("p = {p}: unverified {}", c.value)));
                    }
                    if p % 3 == 2 && c.value != p - 3 {
                        return (true, Some(format!("p = {p}: expected {}, got {}", p - 3, c.value)));
                    }
                    (true, None)
                }
                Err(Error::FallbackExhausted { rejections }) if !rejections.is_empty() => {
                    if p % 3 == 2 {
                        return (false, Some(format!("p = {p}: exhausted but p = 2 mod 3")));
                    }
                    (false, None)
                }
                Err(e) => (false, Some(format!("p = {p}: {e}"))),
            }
        })
        .collect();
    let accepted = results.iter().filter(|(a, _)| *a).count();
    let bad: Vec<String> = results.into_iter().filter_map(|(_, b)| b).collect();
    let mut out = summarize(primes.len(), bad, "primes");
    out.detail.push_str(&format!(" ({accepted} accepted, {} exhausted)", primes.len() - accepted));
    out
}

fn closed_form_quadratic() -> Outcome {
    let rs = odd_primes_below(300);
    let bad = failures(&rs, |&r| {
        let err = |e: Error| format!("r = {r}: {e}");
        let closed = closed_form_period_quadratic(r).map_err(err)?;
        let direct = period_polynomial(r, 2).map_err(err)?;
        fail_if(closed != direct, || format!("r = {r}: {closed} vs {direct}"))
    });
    summarize(rs.len(), bad, "conductors")
}

fn linking() -> Outcome {
    let rs = odd_primes_below(300);
    let bad = failures(&rs, |&r| {
        let err = |e: Error| format!("r = {r}: {e}");
        let psi2 = period_polynomial(r, 2).map_err(err)?;
        let theta2 = link_period_coperiod(&psi2, 2, LinkDirection::PeriodToCoperiod).map_err(err)?;
        let back = link_period_coperiod(&theta2, 2, LinkDirection::CoperiodToPeriod).map_err(err)?;
        let star = if r % 4 == 1 { r as i64 } else { -(r as i64) };
        if back != psi2 || theta2 != IntegerPolynomial::from_i64(&[-star, 0, 1]) {
            return Err(format!("r = {r}: quadratic link gave {theta2}"));
        }
        if r % 4 != 1 {
            return Ok(());
        }
        let psi4 = period_polynomial(r, 4).map_err(err)?;
        let theta4 = link_period_coperiod(&psi4, 4, LinkDirection::PeriodToCoperiod).map_err(err)?;
        let back4 = link_period_coperiod(&theta4, 4, LinkDirection::CoperiodToPeriod).map_err(err)?;
        let part = quadratic_partition(r).map_err(err)?;
        let closed = closed_form_coperiod_quartic(r, &part).map_err(err)?;
        fail_if(theta4 != closed || back4 != psi4, || format!("r = {r}: quartic {theta4} vs {closed}"))
    });
    summarize(rs.len(), bad, "conductors")
}

fn trace_classification() -> Outcome {
    let jobs: Vec<(u64, usize)> = odd_primes_below(200)
        .into_iter()
        .map(|p| (p, 2))
        .chain(odd_primes_below(50).into_iter().map(|p| (p, 3)))
        .collect();
    let counts: Vec<(usize, Option<String>)> = jobs
        .par_iter()
        .map(|&(p, degree)| {
            let mut n = 0;
            for f in monic_polys(p, degree).filter(rabin_irreducible) {
                n += 1;
                match classify_trace_determinant(&f) {
                    Ok(c) if c.pass => {}
                    other => return (n, Some(format!("p = {p}, f = {f}: {other:?}"))),
                }
            }
            (n, None)
        })
        .collect();
    let total: usize = counts.iter().map(|c| c.0).sum();
    summarize(total, counts.into_iter().filter_map(|c| c.1).collect(), "irreducible quadratics and cubics")
}

fn factor_degrees() -> Outcome {
    let primes = primes_up_to(59);
    let pairs: Vec<(u64, u64, u64)> = primes
        .iter()
        .flat_map(|&r| primes.iter().map(move |&q| (r, q)))
        .filter(|&(r, q)| r != q && q > 2)
        .flat_map(|(r, q)| [2u64, 4].into_iter().map(move |d| (r, q, d)))
        .filter(|&(r, _, d)| (r - 1) % d == 0)
        .collect();
    let bad = failures(&pairs, |&(r, q, d)| {
        match period_spec(r, d).and_then(|s| factor_degree_check(r, q, &s)) {
            Ok(c) if c.pass => Ok(()),
            other => Err(format!("r = {r}, q = {q}, d = {d}: {other:?}")),
        }
    });
    summarize(pairs.len(), bad, "(r, q, d) triples")
}

fn jacobi_agreement() -> Outcome {
    let primes = odd_primes_below(2000);
    let bad = failures(&primes, |&p| {
        match (1..p).find(|&a| jacobi(a as i64, p) != euler_criterion(a, p)) {
            Some(a) => Err(format!("a = {a}, p = {p}")),
            None => Ok(()),
        }
    });
    summarize(primes.len(), bad, "primes")
}

fn square_roots() -> Outcome {
    let anchor = cipolla_sum(3, 13, 2).map(|o| (o.result.root, o.result.other_root, o.fell_back));
    if anchor != Ok((4, 9, false)) {
        return Outcome { ok: false, detail: format!("anchor (3, 13) gave {anchor:?}") };
    }
    let primes = odd_primes_below(2000);
    let compared: Vec<(usize, Option<String>)> = primes
        .par_iter()
        .map(|&p| {
            let z = least_qnr(p).unwrap();
            let (_, k) = two_adic_split(p);
            let with_sum = p < 500 && k <= 8;
            let mut n = 0;
            for a in 1..p {
                if euler_criterion(a, p) != Ok(SymbolValue::PlusOne) {
                    continue;
                }
                let ts = match tonelli_shanks(a, p, z) {
                    Ok(s) if mul_mod(s.root, s.root, p) == a => s,
                    other => return (n, Some(format!("tonelli a = {a}, p = {p}: {other:?}"))),
                };
                if with_sum {
                    n += 1;
                    match cipolla_sum(a, p, z) {
                        Ok(o) if !o.fell_back && o.result == ts => {}
                        other => return (n, Some(format!("sum a = {a}, p = {p}: {other:?}"))),
                    }
                }
            }
            (n, None)
        })
        .collect();
    let sums: usize = compared.iter().map(|c| c.0).sum();
    let bad: Vec<String> = compared.into_iter().filter_map(|c| c.1).collect();
    let mut out = summarize(primes.len(), bad, "primes");
    out.detail.push_str(&format!(" ({sums} root-sum comparisons)"));
    out
}

fn spaced_pairs() -> Outcome {
    let primes = odd_primes_below(2000);
    let bad = failures(&primes, |&p| {
        let z = least_qnr(p).unwrap();
        for i in 1..=20u64 {
            let s = mul_mod(i, i, p);
            if s == 0 {
                continue;
            }
            for v in (1..=3u64).filter(|v| v % p != 0) {
                match qnr_spaced_pair(z, s, v, p) {
                    Ok((a, b)) if is_nonresidue(a, p) && is_nonresidue(b, p) => {}
                    Err(Error::DegeneratePair { .. }) => {}
                    other => return Err(format!("z = {z}, s = {s}, v = {v}, p = {p}: {other:?}")),
                }
            }
        }
        Ok(())
    });
    summarize(primes.len(), bad, "primes")
}

fn irreducible_constructions() -> Outcome {
    let primes = odd_primes_below(200);
    let mut bad = failures(&primes, |&q| {
        let desc = prime_field(q);
        let z = qnr_auto(&desc).map_err(|e| format!("q = {q}: {e}"))?.value;
        for e in 1..=3u32 {
            match binomial_tower(&desc, e, z) {
                Ok(f) if f.degree() == Some(1 << e) && rabin_irreducible(&f) => {}
                other => return Err(format!("q = {q}, e = {e}: {other:?}")),
            }
        }
        Ok(())
    });

    let small = odd_primes_below(50);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut jobs = Vec::new();
    for &p in &small {
        let mut polys: Vec<FpPoly> = monic_polys(p, 2).filter(rabin_irreducible).take(3).collect();
        polys.extend(monic_polys(p, 3).filter(rabin_irreducible).take(3));
        for _ in 0..50 {
            let map = loop {
                let m = MobiusMap::new(rng.gen_range(0..p), rng.gen_range(0..p), rng.gen_range(0..p), rng.gen_range(0..p));
                if m.det(p) != 0 {
                    break m;
                }
            };
            let next = loop {
                let m = MobiusMap::new(rng.gen_range(0..p), rng.gen_range(0..p), rng.gen_range(0..p), rng.gen_range(0..p));
                if m.det(p) != 0 {
                    break m;
                }
            };
            for f in &polys {
                jobs.push((f.clone(), map, next));
            }
        }
    }
    bad.extend(failures(&jobs, |(f, map, next)| {
        let p = f.p();
        let g = match mobius_generate(f, map) {
            Ok(g) if rabin_irreducible(&g) && g.degree() == f.degree() => g,
            other => return Err(format!("p = {p}, f = {f}, {map:?}: {other:?}")),
        };
        let err = |e: Error| format!("p = {p}, f = {f}: {e}");
        let seq = mobius_generate(&g, next).map_err(err)?;
        let once = mobius_generate(f, &map.compose(next, p)).map_err(err)?;
        fail_if(seq != once, || format!("p = {p}, f = {f}: composition mismatch"))
    }));
    summarize(primes.len() * 3 + jobs.len(), bad, "towers and transforms")
}

fn randomized_baseline() -> Outcome {
    let report = bench_randomized(8, 1000, SEED);
    let ok = (1.8..=2.2).contains(&report.mean_trials);
    Outcome { ok, detail: format!("mean trials {:.4} over {} primes", report.mean_trials, report.count) }
}

fn parameter_existence() -> Outcome {
    let primes = odd_primes_below(1_000_000);
    let worst = std::sync::Mutex::new((0u64, 0u64));
    let bad = failures(&primes, |&q| {
        let desc = prime_field(q);
        let limit = 4.0 * desc.ln_q().powi(2) + 16.0;
        let spec = match find_period_parameters(&desc, 10 * limit as u64) {
            Ok(s) => s,
            Err(e) => return Err(format!("q = {q}: {e}")),
        };
        {
            let mut w = worst.lock().unwrap();
            if spec.r > w.0 {
                *w = (spec.r, q);
            }
        }
        fail_if(spec.r as f64 >= limit, || format!("q = {q}: r = {} >= {limit:.1}", spec.r))
    });
    let (r, q) = *worst.lock().unwrap();
    let mut out = summarize(primes.len(), bad, "primes");
    out.detail.push_str(&format!(" (largest r = {r} at q = {q})"));
    out
}

type Criterion = (u32, &'static str, fn() -> Outcome, Duration);

fn main() {
    let criteria: [Criterion; 12] = [
        (1, "soundness of auto/general/least, p < 10^4", soundness, Duration::from_secs(120)),
        (2, "special path verified or exhausted, -3 for p = 2 mod 3", special_path, Duration::MAX),
        (3, "closed-form quadratic period polynomial, r < 300", closed_form_quadratic, Duration::MAX),
        (4, "period/coperiod link, quadratic and quartic", linking, Duration::MAX),
        (5, "trace determinant classification", trace_classification, Duration::from_secs(60)),
        (6, "period polynomial factor degrees, r, q < 60", factor_degrees, Duration::MAX),
        (7, "Jacobi equals Euler, p < 2000", jacobi_agreement, Duration::MAX),
        (8, "Tonelli-Shanks and the root sum", square_roots, Duration::MAX),
        (9, "spaced nonresidue pairs", spaced_pairs, Duration::MAX),
        (10, "binomial towers and linear fractional transforms", irreducible_constructions, Duration::MAX),
        (11, "randomized baseline mean in [1.8, 2.2]", randomized_baseline, Duration::from_secs(30)),
        (12, "period parameters r < 4 ln(q)^2 + 16, q < 10^6", parameter_existence, Duration::from_secs(300)),
    ];
    let mut failed = 0;
    for (n, name, run, budget) in criteria {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= budget;
        let ok = out.ok && in_time;
        let limit = if budget == Duration::MAX { String::new() } else { format!(", limit {}s", budget.as_secs()) };
        println!(
            "criterion {n:>2} {}: {name}: {} [{:.2}s{limit}]",
            if ok { "PASS" } else { "FAIL" },
            out.detail,
            elapsed.as_secs_f64()
        );
        if !ok {
            failed += 1;
        }
    }
    println!("acceptance: {} of 12 criteria pass", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
