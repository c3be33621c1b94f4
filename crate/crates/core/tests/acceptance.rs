//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fail.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use common::{primitive_period, substitution_factors_by_prefix};
use subshift_core::codes::{
    codes_equal_on, compose, enumerate_automorphisms, find_inverse, is_endomorphism, order_mod_shift,
    AutomorphismCertificate, InverseSearch, NonInvertibility, OrderModShift, SearchLimits, SlidingBlockCode,
};
use subshift_core::harness::{ExperimentConfig, OverallVerdict, TheoremReport};
use subshift_core::language::{growth_report, morse_hedlund_classify, MorseHedlund, ShiftKind, Subshift, SubshiftSpec};
use subshift_core::two_dim::{
    build_eta_window, certify_period, qz_threshold_check, rect_complexity, seed_len, verify_window_periodicity,
    PeriodSearch, QzVerdict,
};
use subshift_core::Symbol;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn bundled() -> Vec<(String, Subshift, usize)> {
    ExperimentConfig::bundled()
        .resolved_specs()
        .unwrap()
        .into_iter()
        .map(|s| (s.name, Subshift::new(s.spec).unwrap(), s.aut_range))
        .collect()
}

fn automorphisms(shift: &Subshift, range: usize) -> Vec<AutomorphismCertificate> {
    let depth = shift.spec().default_depth(range);
    enumerate_automorphisms(shift, range, 2, depth, SearchLimits::default()).unwrap().certificates
}

fn c1_fibonacci_complexity() -> Outcome {
    let fib = Subshift::new(SubshiftSpec::fibonacci()).unwrap();
    let table = fib.complexity_table(40).unwrap();
    for (i, &p) in table.iter().enumerate() {
        ensure!(p == i as u64 + 2, "P({}) = {p}", i + 1);
    }
    let ShiftKind::Substitution { rules, seed } = &fib.spec().kind else { unreachable!() };
    let rules: Vec<Vec<Symbol>> = rules.iter().map(|w| w.as_slice().to_vec()).collect();
    for n in 1..=40 {
        let oracle = substitution_factors_by_prefix(&rules, *seed, n, 20_000);
        let ours: Vec<Vec<Symbol>> = fib.words(n).unwrap().iter().map(<[Symbol]>::to_vec).collect();
        ensure!(oracle == ours, "factor sets differ at n = {n}");
    }
    Ok("P(n) = n + 1 for n <= 40; factor sets equal the prefix oracle".into())
}

fn c2_full_shift() -> Outcome {
    let full = Subshift::new(SubshiftSpec::full_binary()).unwrap();
    let table = full.complexity_table(20).unwrap();
    for (i, &p) in table.iter().enumerate() {
        ensure!(p == 1 << (i + 1), "P({}) = {p}", i + 1);
    }
    let h = growth_report(&table).unwrap().entropy_estimate;
    let rel = (h - std::f64::consts::LN_2).abs() / std::f64::consts::LN_2;
    ensure!(rel <= 0.01, "entropy estimate {h} is {rel:.4} off ln 2");
    Ok(format!("P(n) = 2^n for n <= 20; entropy estimate {h:.6} (relative error {rel:.2e})"))
}

fn c3_morse_hedlund() -> Outcome {
    let mut seen = Vec::new();
    for (name, shift, _) in bundled() {
        let ShiftKind::Periodic { word } = &shift.spec().kind else { continue };
        let p = primitive_period(word.as_slice());
        let table = shift.complexity_table(3 * p + 4).unwrap();
        let least = table.iter().enumerate().find(|&(i, &v)| v <= i as u64 + 1).map(|(i, _)| i + 1).unwrap();
        let got = morse_hedlund_classify(&table).unwrap();
        ensure!(got == MorseHedlund::ForcedPeriodic(least), "{name}: {got:?}, least n = {least}");
        for n in p..=table.len() {
            ensure!(table[n - 1] == p as u64, "{name}: P({n}) = {}", table[n - 1]);
        }
        seen.push(p);
    }
    seen.sort();
    ensure!(seen == [1, 2, 3, 4, 5, 6], "bundled periods {seen:?}");
    Ok("ForcedPeriodic at the least n with P(n) <= n, P(n) = p for n >= p, p = 1..6".into())
}

fn c4_submultiplicative() -> Outcome {
    let specs = bundled();
    let mut checked = 0;
    for (name, shift, _) in &specs {
        let t = shift.complexity_table(30).unwrap();
        for m in 1..30 {
            for n in 1..=30 - m {
                let prod = u128::from(t[m - 1]) * u128::from(t[n - 1]);
                ensure!(u128::from(t[m + n - 1]) <= prod, "{name}: P({}) > P({m}) P({n})", m + n);
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} pairs over {} bundled specs, zero violations", specs.len()))
}

fn c5_rectangle_bound(report: &TheoremReport) -> Outcome {
    let grid = [2, 4, 8, 16];
    ensure!(report.horizons.rect_grid == grid, "bundled grid is {:?}", report.horizons.rect_grid);
    let mut checks = 0;
    for s in &report.specs {
        let a = s.automorphisms.as_ref().ok_or(format!("{}: no automorphisms", s.name))?;
        ensure!(s.rect_checks.len() == a.count * grid.len() * grid.len(), "{}: incomplete grid", s.name);
        for c in &s.rect_checks {
            ensure!(c.bound_holds && c.count <= c.bound, "{} #{} at {}x{}: {} > {}", s.name, c.automorphism, c.n, c.k, c.count, c.bound);
        }
        for r in &s.row_checks {
            ensure!(r.count == r.complexity, "{} #{}: P({}, 1) = {} != {}", s.name, r.automorphism, r.n, r.count, r.complexity);
        }
        checks += s.rect_checks.len();
    }
    // Recompute a slice directly rather than trusting the report alone.
    for (name, shift, range) in bundled() {
        for (i, cert) in automorphisms(&shift, range).iter().enumerate() {
            for (n, k) in [(2, 16), (16, 2), (8, 8)] {
                let c = rect_complexity(&shift, &cert.code, n, k).unwrap();
                let b = shift.complexity(seed_len(cert.code.range(), n, k)).unwrap();
                ensure!(c <= b, "{name} #{i} at {n}x{k}: {c} > {b}");
            }
        }
    }
    Ok(format!("{checks} windows on the {{2,4,8,16}}^2 grid, zero violations; P(n, 1) = P(n) throughout"))
}

fn c6_enumeration() -> Outcome {
    let full = Subshift::new(SubshiftSpec::full_binary()).unwrap();
    let certs = automorphisms(&full, 0);
    let id = SlidingBlockCode::identity(&full).unwrap();
    let flip = SlidingBlockCode::from_fn(&full, 0, |w| 1 - w[0]).unwrap();
    ensure!(certs.len() == 2, "full shift range 0: {} automorphisms", certs.len());
    for want in [&id, &flip] {
        ensure!(certs.iter().any(|c| codes_equal_on(&full, &c.code, want).unwrap()), "missing {want:?}");
    }
    let fib = Subshift::new(SubshiftSpec::fibonacci()).unwrap();
    for range in 1..=2usize {
        let certs = automorphisms(&fib, range);
        ensure!(certs.len() == 2 * range + 1, "Fibonacci range {range}: {} certificates", certs.len());
        for c in &certs {
            let is_power = (-(range as i64)..=range as i64)
                .any(|s| codes_equal_on(&fib, &c.code, &SlidingBlockCode::shift_power(&fib, s).unwrap()).unwrap());
            ensure!(is_power, "Fibonacci range {range}: a certificate is not a shift power");
        }
    }
    Ok("full range 0 = {id, flip}; Fibonacci ranges 1, 2 give 3 and 5 shift powers".into())
}

fn c7_theorem_witness(report: &TheoremReport) -> Outcome {
    let fib = Subshift::new(SubshiftSpec::fibonacci()).unwrap();
    let mut found = 0;
    for range in 1..=2 {
        for c in automorphisms(&fib, range) {
            let o = order_mod_shift(&fib, &c.code, 8, 24).unwrap();
            ensure!(matches!(o, OrderModShift::Found { b: 1, .. }), "Fibonacci range {range}: {o:?}");
            found += 1;
        }
    }
    let gm = Subshift::new(SubshiftSpec::golden_mean()).unwrap();
    let gm_certs = automorphisms(&gm, 1);
    for c in &gm_certs {
        let o = order_mod_shift(&gm, &c.code, 8, 24).unwrap();
        ensure!(o.is_found(), "golden mean: {o:?}");
    }
    ensure!(report.verdict == OverallVerdict::AllPeriodicModShift { max_b: 8 }, "verdict {:?}", report.verdict);
    Ok(format!(
        "{found} Fibonacci certificates with b = 1, {} golden-mean certificates found, report verdict AllPeriodicModShift",
        gm_certs.len()
    ))
}

fn c8_order_sanity() -> Outcome {
    let mut pairs = 0;
    for (name, shift, range) in bundled() {
        let period = match &shift.spec().kind {
            ShiftKind::Periodic { word } => Some(primitive_period(word.as_slice()) as i64),
            _ => None,
        };
        for k in -3i64..=3 {
            let o = order_mod_shift(&shift, &SlidingBlockCode::shift_power(&shift, k).unwrap(), 8, 24).unwrap();
            let ok = match (period, o) {
                (None, _) => o == OrderModShift::Found { b: 1, a: -k },
                // On an orbit of period p, sigma^k = sigma^(k mod p); the least |a| represents -k.
                (Some(p), OrderModShift::Found { b: 1, a }) => (a + k).rem_euclid(p) == 0 && 2 * a.abs() <= p,
                _ => false,
            };
            ensure!(ok, "{name}: sigma^{k} gives {o:?}");
        }
        let certs = automorphisms(&shift, range.min(1));
        let orders: Vec<OrderModShift> = certs.iter().map(|c| order_mod_shift(&shift, &c.code, 8, 24).unwrap()).collect();
        for (c, oc) in certs.iter().zip(&orders) {
            let OrderModShift::Found { b, .. } = *oc else { continue };
            for d in &certs {
                let conj = compose(&shift, &compose(&shift, &d.code, &c.code).unwrap(), &d.inverse).unwrap();
                let o = order_mod_shift(&shift, &conj, 8, 24).unwrap();
                ensure!(matches!(o, OrderModShift::Found { b: b2, .. } if b2 == b), "{name}: conjugate order {o:?}, expected b = {b}");
                pairs += 1;
            }
        }
    }
    let full = Subshift::new(SubshiftSpec::full_binary()).unwrap();
    let flip = SlidingBlockCode::from_fn(&full, 0, |w| 1 - w[0]).unwrap();
    let o = order_mod_shift(&full, &flip, 8, 24).unwrap();
    ensure!(o == OrderModShift::Found { b: 2, a: 0 }, "flip: {o:?}");
    Ok(format!("sigma^k for |k| <= 3 on every bundled spec; flip = (2, 0); b invariant on {pairs} conjugate pairs"))
}

fn c9_qz_pipeline() -> Outcome {
    let fib = Subshift::new(SubshiftSpec::fibonacci()).unwrap();
    let sigma = SlidingBlockCode::shift_power(&fib, 1).unwrap();
    let q = qz_threshold_check(&fib, &sigma, 64, 64).unwrap();
    let bound = fib.complexity(seed_len(1, 64, 64)).unwrap();
    ensure!(q.verdict == QzVerdict::Triggered, "64x64: count {} not below 256", q.count);
    ensure!(q.count <= bound, "64x64: count {} above bound {bound}", q.count);
    let InverseSearch::Found(cert) = find_inverse(&fib, &sigma, 1, fib.spec().default_depth(1)).unwrap() else {
        return Err("sigma has no certified inverse".into());
    };
    let PeriodSearch::Found(v) = certify_period(&fib, &cert, 8, 24).unwrap() else {
        return Err("no period vector".into());
    };
    let mut windows = 0;
    for size in [2, 4, 8, 16, 32, 64] {
        for seed in fib.words(seed_len(1, size, size)).unwrap().iter() {
            let w = build_eta_window(&fib, &sigma, seed, size, size).unwrap();
            ensure!(verify_window_periodicity(&w, v).unwrap(), "{v} fails on a {size}x{size} window");
            windows += 1;
        }
    }
    Ok(format!(
        "64x64 count {} <= 256 (bound P(190) = {bound}), Triggered; period vector {v} holds on {windows} windows up to 64x64",
        q.count
    ))
}

fn c10_non_invertibility() -> Outcome {
    let full = Subshift::new(SubshiftSpec::full_binary()).unwrap();
    let xor = SlidingBlockCode::from_fn(&full, 1, |w| w[1] ^ w[2]).unwrap();
    ensure!(is_endomorphism(&full, &xor, 12).unwrap(), "xor-right fails endomorphy at depth 12");
    match find_inverse(&full, &xor, 2, 12).unwrap() {
        InverseSearch::NotInvertibleWithinBounds(NonInvertibility::NonInjective { first, second, image }) => {
            let alph = full.alphabet();
            Ok(format!(
                "endomorphism at depth 12; ({})^inf and ({})^inf both map to ({})^inf",
                alph.render(first.as_slice()),
                alph.render(second.as_slice()),
                alph.render(image.as_slice())
            ))
        }
        other => Err(format!("expected a two-preimage witness, got {other:?}")),
    }
}

fn run_bundled() -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_subshift"))
        .args(["--format", "json", "run"])
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("run exited with {}: {}", out.status, String::from_utf8_lossy(&out.stderr)));
    }
    Ok(out.stdout)
}

fn c11_determinism(first: &[u8], second: &[u8]) -> Outcome {
    ensure!(first == second, "the two JSON reports differ");
    Ok(format!("two runs produced identical {}-byte reports", first.len()))
}

fn main() {
    let start = Instant::now();
    let runs = (run_bundled(), run_bundled());
    let report: Result<TheoremReport, String> = runs
        .0
        .as_ref()
        .map_err(Clone::clone)
        .and_then(|b| serde_json::from_slice(b).map_err(|e| e.to_string()));

    let report = &report;
    let with_report = |f: fn(&TheoremReport) -> Outcome| -> Box<dyn Fn() -> Outcome + '_> {
        Box::new(move || report.as_ref().map_err(Clone::clone).and_then(f))
    };
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("Fibonacci complexity", Box::new(c1_fibonacci_complexity)),
        ("full-shift complexity", Box::new(c2_full_shift)),
        ("Morse-Hedlund", Box::new(c3_morse_hedlund)),
        ("submultiplicativity", Box::new(c4_submultiplicative)),
        ("rectangle bound", with_report(c5_rectangle_bound)),
        ("automorphism enumeration", Box::new(c6_enumeration)),
        ("finite order witness", with_report(c7_theorem_witness)),
        ("order sanity", Box::new(c8_order_sanity)),
        ("threshold pipeline", Box::new(c9_qz_pipeline)),
        ("non-invertibility", Box::new(c10_non_invertibility)),
        (
            "determinism",
            Box::new(|| match &runs {
                (Ok(a), Ok(b)) => c11_determinism(a, b),
                (Err(e), _) | (_, Err(e)) => Err(e.clone()),
            }),
        ),
    ];

    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed in {:.1}s", criteria.len() - failed, start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
