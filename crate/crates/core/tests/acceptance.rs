//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use brecip_core::breciprocal::{disc_f_via_formula, Member};
use brecip_core::census::{run_census, CensusConfig};
use brecip_core::conic::{brute_solutions, primitive_solutions};
use brecip_core::galois::{classify, frobenius_audit, Verdict};
use brecip_core::intpoly::{discriminant, factor_mod_p, factor_over_z, PrimeIter, DEFAULT_SEED};
use brecip_core::{BRecipPoly, CensusReport, ClassifyOptions, Error, FamilyKind, FamilySpec, IntPoly};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20240917;

struct Check {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: impl Into<String>) -> Check {
    Check {
        pass,
        detail: detail.into(),
    }
}

fn census(kind: FamilyKind, n: usize, b: i64, heights: &[u64], shards: u64) -> Result<CensusReport, Error> {
    let mut cfg = CensusConfig::new(kind, n, b, heights.to_vec());
    cfg.shards = shards;
    cfg.threads = 8;
    cfg.seed = SEED;
    run_census(&cfg)
}

fn disc_identity_holds(b: i64, g: &[i64]) -> bool {
    let w = BRecipPoly::from_i64s(b, g).unwrap();
    disc_f_via_formula(&w) == discriminant(&w.f()).unwrap()
}

fn a1() -> Check {
    let mut bad = Vec::new();
    let mut exhaustive = 0u64;
    for n in 1..=4usize {
        let total = 7u64.pow(n as u32 + 1);
        for b in (-3i64..=3).filter(|&b| b != 0) {
            for idx in 0..total {
                let g: Vec<i64> = (0..=n).map(|i| (idx / 7u64.pow(i as u32) % 7) as i64 - 3).collect();
                if g[n] != 0 {
                    exhaustive += 1;
                    if !disc_identity_holds(b, &g) {
                        bad.push((b, g));
                    }
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let random = 10_000u64;
    for _ in 0..random {
        let n = rng.gen_range(1..=4usize);
        let mut b = 0;
        while b == 0 {
            b = rng.gen::<i32>() as i64;
        }
        let mut g: Vec<i64> = (0..=n).map(|_| rng.gen::<i32>() as i64).collect();
        if g[n] == 0 {
            g[n] = 1;
        }
        if !disc_identity_holds(b, &g) {
            bad.push((b, g));
        }
    }
    check(
        bad.is_empty(),
        format!(
            "disc identity: {exhaustive} exhaustive + {} random, {} mismatches{}",
            random,
            bad.len(),
            bad.first().map(|x| format!(", first {x:?}")).unwrap_or_default()
        ),
    )
}

fn a2() -> Check {
    let mut parts = Vec::new();
    let mut ok = true;
    for b in [-2i64, -1, 1, 2, 3] {
        let fast = primitive_solutions(b, 5000);
        let brute = brute_solutions(b, 5000).unwrap();
        ok &= fast == brute;
        parts.push(format!("b={b}: {} vs {}", fast.len(), brute.len()));
    }
    check(ok, format!("conic completeness at H=5000: {}", parts.join(", ")))
}

fn a3(reports: &mut Vec<(String, CensusReport)>) -> Check {
    let hs = [500u64, 1000, 2000, 4000];
    let mut ok = true;
    let mut parts = Vec::new();
    for b in [-1i64, 2] {
        let r = census(FamilyKind::BReciprocal, 1, b, &hs, 1).unwrap();
        let fit = r.fit("in_G1").expect("in_G1 fit");
        ok &= fit.band <= 1.35;
        let norm: Vec<String> = fit.normalized.iter().map(|x| format!("{x:.3}")).collect();
        parts.push(format!("b={b}: in_G1/(H log H) = [{}] band {:.3}", norm.join(", "), fit.band));
        reports.push((format!("A3 b={b}"), r));
    }
    check(ok, format!("{} (limit 1.35)", parts.join("; ")))
}

fn a4(reports: &mut Vec<(String, CensusReport)>) -> (Check, CensusReport) {
    let r = census(FamilyKind::BReciprocal, 2, -1, &[40, 80, 160], 1).unwrap();
    let mut ok = true;
    let mut last = 0.0;
    let mut parts = Vec::new();
    for h in &r.per_height {
        let (g1, g2) = (h.tally.in_g1, h.tally.in_g2);
        let ratio = if g2 == 0 { f64::INFINITY } else { g1 as f64 / g2 as f64 };
        ok &= g1 > g2 && ratio >= last;
        last = ratio;
        parts.push(format!("H={}: {g1}/{g2} = {ratio:.3}", h.h));
    }
    reports.push(("A4".into(), r.clone()));
    (check(ok, format!("in_G1/in_G2 at n=2, b=-1: {}", parts.join(", "))), r)
}

/// Random members of a box, bucketed by verdict until each quota is met.
fn sample_verdicts(
    n: usize,
    bs: &[i64],
    h: u64,
    quotas: &[(Verdict, usize)],
    rng: &mut ChaCha8Rng,
) -> BTreeMap<Verdict, Vec<BRecipPoly>> {
    let opts = ClassifyOptions::default();
    let mut out: BTreeMap<Verdict, Vec<BRecipPoly>> = BTreeMap::new();
    let want: BTreeMap<Verdict, usize> = quotas.iter().cloned().collect();
    for _ in 0..500_000 {
        if want.iter().all(|(v, &q)| out.get(v).map_or(0, |x| x.len()) >= q) {
            break;
        }
        let b = bs[rng.gen_range(0..bs.len())];
        let spec = FamilySpec::new(FamilyKind::BReciprocal, n, b, h).unwrap();
        let rank = rng.gen_range(0..spec.rank_count().unwrap());
        let Some(digits) = spec.decode(rank) else { continue };
        let Member::BRecip(w) = spec.member_from_digits(&digits) else { unreachable!() };
        let v = classify(&w, &opts).verdict;
        if let Some(&q) = want.get(&v) {
            let bucket = out.entry(v).or_default();
            if bucket.len() < q {
                bucket.push(w);
            }
        }
    }
    out
}

fn a5() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    // At n = 1 the groups G1 and G2 coincide and the classifier reports G1.
    let mut pool: Vec<(Verdict, BRecipPoly)> = Vec::new();
    let plans: [(usize, &[i64], u64, &[(Verdict, usize)]); 3] = [
        (1, &[-1, 2, 3], 50, &[(Verdict::G0, 30), (Verdict::G1, 30)]),
        (2, &[-1, 1, 2], 12, &[(Verdict::G0, 25), (Verdict::G1, 25), (Verdict::G2, 20)]),
        (3, &[-1, 1, 2], 6, &[(Verdict::G0, 20), (Verdict::G1, 15), (Verdict::G2, 15)]),
    ];
    let mut short = Vec::new();
    for (n, bs, h, quotas) in plans {
        let got = sample_verdicts(n, bs, h, quotas, &mut rng);
        for &(v, q) in quotas {
            let list = got.get(&v).cloned().unwrap_or_default();
            if list.len() < q {
                short.push(format!("n={n} {v}: {}/{q}", list.len()));
            }
            pool.extend(list.into_iter().map(|w| (v, w)));
        }
    }
    let g3: Vec<BRecipPoly> = common::g3_search(1, 10).take(20).collect();
    if g3.len() < 20 {
        short.push(format!("n=3 G3: {}/20", g3.len()));
    }
    pool.extend(g3.into_iter().map(|w| (Verdict::G3, w)));

    let mut fails = Vec::new();
    let mut per_verdict: BTreeMap<Verdict, usize> = BTreeMap::new();
    let (mut g0, mut escaped) = (0usize, 0usize);
    for (v, w) in &pool {
        *per_verdict.entry(*v).or_default() += 1;
        let audit = frobenius_audit(w, *v, 50).unwrap();
        if !audit.passed() {
            fails.push(format!("{v} g={} b={}", w.g(), w.b()));
        }
        if *v == Verdict::G0 {
            g0 += 1;
            escaped += frobenius_audit(w, Verdict::G0, 200).unwrap().escapes_proper_subgroups(w.n()) as usize;
        }
    }
    let escape_rate = escaped as f64 / g0 as f64;
    let ok = pool.len() == 200 && short.is_empty() && fails.is_empty() && escape_rate >= 0.9;
    check(
        ok,
        format!(
            "{} audits {:?}, {} failures{}; G0 escape {escaped}/{g0} = {:.1}%{}",
            pool.len(),
            per_verdict,
            fails.len(),
            fails.first().map(|f| format!(" (first {f})")).unwrap_or_default(),
            100.0 * escape_rate,
            if short.is_empty() { String::new() } else { format!("; short: {}", short.join(", ")) }
        ),
    )
}

fn a6(reports: &mut Vec<(String, CensusReport)>) -> Check {
    let r = census(FamilyKind::BReciprocalMonic, 2, 1, &[250, 500, 1000, 2000], 1).unwrap();
    let fit = r.fit("E").expect("E fit").clone();
    reports.push(("A6".into(), r));
    let norm: Vec<String> = fit.normalized.iter().map(|x| format!("{x:.3}")).collect();
    check(
        fit.band <= 1.5,
        format!("monic E/(H log H) = [{}] band {:.3} (limit 1.5)", norm.join(", "), fit.band),
    )
}

fn a7(reports: &mut Vec<(String, CensusReport)>) -> Check {
    let r = census(FamilyKind::FixedConstantTerm, 3, 2, &[30, 60, 120], 1).unwrap();
    let fit = r.fit("R").expect("R fit").clone();
    reports.push(("A7".into(), r));
    let doubling: Vec<f64> = fit.counts.windows(2).map(|w| w[1] as f64 / w[0] as f64).collect();
    let ok = fit.band <= 2.0 && doubling.iter().all(|&d| (1.0..=3.0).contains(&d));
    check(
        ok,
        format!(
            "R = {:?}, R/H band {:.3} (limit 2), doubling ratios {:?} (target 2 +-50%)",
            fit.counts,
            fit.band,
            doubling.iter().map(|d| format!("{d:.3}")).collect::<Vec<_>>()
        ),
    )
}

/// Irreducible by a mod-p certificate: some good prime leaves it irreducible.
fn certified_irreducible(p: &IntPoly) -> bool {
    let d = p.degree().unwrap();
    if d == 1 {
        return true;
    }
    PrimeIter::new().take(25).any(|q| {
        if (p.lc() % BigInt::from(q)) == BigInt::from(0) {
            return false;
        }
        match factor_mod_p(p, q, DEFAULT_SEED) {
            Ok(f) => f.degree_pattern() == vec![d],
            Err(_) => false,
        }
    })
}

fn normalize(p: &IntPoly) -> IntPoly {
    let p = p.primitive_part();
    if p.lc() < BigInt::from(0) {
        -p
    } else {
        p
    }
}

fn a8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0xa8);
    let mut bad = 0;
    for _ in 0..1000 {
        let k = rng.gen_range(2..=3);
        let mut factors = Vec::new();
        while factors.len() < k {
            let d = rng.gen_range(1..=4usize);
            let mut c: Vec<i64> = (0..=d).map(|_| rng.gen_range(-99..=99)).collect();
            if c[d] == 0 {
                continue;
            }
            if c[0] == 0 {
                c[0] = 1;
            }
            let p = IntPoly::from_i64s(&c);
            if certified_irreducible(&p) {
                factors.push(normalize(&p));
            }
        }
        let product = factors.iter().skip(1).fold(factors[0].clone(), |acc, f| &acc * f);
        let mut expected = factors.clone();
        expected.sort_by(|a, b| a.canonical_cmp(b));
        let mut got: Vec<IntPoly> = factor_over_z(&product)
            .unwrap()
            .factors
            .iter()
            .flat_map(|(f, e)| std::iter::repeat_n(normalize(f), *e))
            .collect();
        got.sort_by(|a, b| a.canonical_cmp(b));
        if got != expected {
            bad += 1;
        }
    }
    check(bad == 0, format!("1000 random products recovered, {bad} mismatches"))
}

fn a9(a4: &CensusReport) -> Check {
    let heights = [40u64, 80, 160];
    let sharded = census(FamilyKind::BReciprocal, 2, -1, &heights, 8).unwrap();
    let same_shards = sharded.to_json() == a4.to_json();
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = CensusConfig::new(FamilyKind::BReciprocal, 2, -1, heights.to_vec());
    cfg.shards = 8;
    cfg.threads = 8;
    cfg.seed = SEED;
    cfg.checkpoint_dir = Some(dir.path().to_path_buf());
    cfg.stop_after_chunks = Some(200);
    let killed = matches!(run_census(&cfg), Err(Error::Interrupted(_)));
    cfg.stop_after_chunks = None;
    let resumed = run_census(&cfg).unwrap();
    let same_resume = resumed.to_json() == a4.to_json();
    check(
        same_shards && killed && same_resume,
        format!(
            "shards 1 vs 8 identical: {same_shards}; interrupted mid-run: {killed}; resumed report identical: {same_resume}"
        ),
    )
}

fn a10(reports: &[(String, CensusReport)]) -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, r) in reports {
        let top = r.per_height.last().unwrap();
        let bad = top.tally.verdicts.get(Verdict::Undetermined) + top.tally.probably_not_sn;
        let rate = bad as f64 / top.tally.members as f64;
        ok &= rate < 1e-3;
        parts.push(format!("{name}: {bad}/{}", top.tally.members));
    }
    check(ok, format!("undetermined + probably-not-S_n below 0.1%: {}", parts.join(", ")))
}

fn main() -> ExitCode {
    let mut reports = Vec::new();
    let mut all = true;
    let mut report = |id: &str, start: Instant, c: Check| {
        all &= c.pass;
        println!(
            "{id} {} {} [{:.1}s]",
            if c.pass { "PASS" } else { "FAIL" },
            c.detail,
            start.elapsed().as_secs_f64()
        );
    };
    let t = Instant::now();
    report("A1", t, a1());
    let t = Instant::now();
    report("A2", t, a2());
    let t = Instant::now();
    report("A3", t, a3(&mut reports));
    let t = Instant::now();
    let (c4, a4_report) = a4(&mut reports);
    report("A4", t, c4);
    let t = Instant::now();
    report("A5", t, a5());
    let t = Instant::now();
    report("A6", t, a6(&mut reports));
    let t = Instant::now();
    report("A7", t, a7(&mut reports));
    let t = Instant::now();
    report("A8", t, a8());
    let t = Instant::now();
    report("A9", t, a9(&a4_report));
    let t = Instant::now();
    report("A10", t, a10(&reports));
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
