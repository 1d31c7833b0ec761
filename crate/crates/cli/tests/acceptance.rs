//! The acceptance suite. Prints one line per criterion and exits non-zero if
//! any criterion fails, except those listed in `KNOWN_UNATTAINABLE`, which
//! must still fail (and whose attainable parts must still hold).

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::{dense_betti, dense_certified_betti};
use hcyc::{run_with_threads, RunConfig, Task};
use hcyc_core::algebra::presets::{catalog, preset};
use hcyc_core::chain::homotopy_fiber;
use hcyc_core::excision::{
    filtration_f, filtration_q, graded_piece_f_check, named_extension, wodzicki_verify, Extension, FiltrationKind,
};
use hcyc_core::hochschild::{
    bar_complex, connes_check, connes_lambda_complex, hc_complex, hc_homology, hh_complex, hoch_complex,
    homotopy_check, induced_total_map, CyclicBicomplex, HH_COLUMNS,
};
use hcyc_core::lie::{ce_complex, gl, h2_vs_hc1, lqt_verify, trace_chain_check, DEFAULT_SIZE_LIMIT};
use hcyc_core::tangent::{chern1, k1_rel_probe, DEFAULT_SAMPLES, DEFAULT_SEED};
use hcyc_core::{Algebra, Bimodule, ChainComplex, DegreeRange, Rational};

type Q = Rational;

/// Criteria that cannot pass as stated, with the reason.
const KNOWN_UNATTAINABLE: &[(u8, &str)] = &[
    (
        8,
        "k⋉V is the unitalization of V, and excision always holds for I → I⁺ → k; \
         the non-H-unital failure is exhibited by upper_triangular_to_diagonal instead",
    ),
    (
        10,
        "H₂(gl_r(ℚ[ε])) = 1 while HC₁(ℚ[ε]) = 0: the extra class is Λ²HC₀; \
         the sl_r form H₂(sl_r(A)) = HC₁(A) holds",
    ),
];

struct Outcome {
    /// The criterion as stated.
    pass: bool,
    /// The parts that are expected to hold even for known-unattainable criteria.
    required: bool,
    detail: String,
}

impl Outcome {
    fn plain(pass: bool, detail: String) -> Self {
        Outcome {
            pass,
            required: pass,
            detail,
        }
    }
}

fn p(text: &str) -> Arc<Algebra<Q>> {
    Arc::new(preset(text).unwrap())
}

fn ext(name: &str) -> Extension<Q> {
    named_extension(name).unwrap()
}

/// `d_{n−1} ∘ d_n = 0` in every materialized degree, recomputed by hand.
fn square_zero(c: &ChainComplex<Q>) -> bool {
    (c.lo() + 2..=c.hi()).all(|n| c.diff_at(n - 1).unwrap().mul(&c.diff_at(n).unwrap()).is_zero())
}

fn c1_well_formed() -> Outcome {
    let d = 5;
    let mut count = 0;
    let mut bad = Vec::new();
    let mut check = |what: String, c: ChainComplex<Q>| {
        count += 1;
        if !square_zero(&c) {
            bad.push(what);
        }
    };
    for a in catalog::<Q>() {
        let m = Bimodule::regular(a.clone());
        check(format!("bar {}", a.name()), bar_complex(&m, d).unwrap());
        check(format!("hoch {}", a.name()), hoch_complex(&m, d).unwrap());
        check(format!("HH {}", a.name()), hh_complex(&a, d).unwrap());
        check(format!("HC {}", a.name()), hc_complex(&a, d).unwrap());
        check(format!("λ {}", a.name()), connes_lambda_complex(&a, d).unwrap());
        for r in [1, 2] {
            check(format!("CE gl{r} {}", a.name()), ce_complex(&gl(&*a, r), d, DEFAULT_SIZE_LIMIT).unwrap());
        }
    }
    let extensions = [
        "dual_to_ground",
        "trunc3_to_ground",
        "upper_triangular_to_diagonal",
        "split_product",
        "square_zero",
        "aug:fat_point",
        "aug:square_zero(2)",
    ];
    for name in extensions {
        let e = ext(name);
        let m = Bimodule::regular(e.algebra().clone());
        for kind in [FiltrationKind::Bar, FiltrationKind::Hoch] {
            for n in 0..=d {
                check(format!("F{n} {kind:?} {name}"), filtration_f(&e, &m, kind, n, d).unwrap().complex);
                check(format!("Q{n} {kind:?} {name}"), filtration_q(&e, kind, n, d).unwrap().complex);
            }
        }
    }
    Outcome::plain(bad.is_empty(), format!("{count} complexes, failures: {bad:?}"))
}

fn c2_homotopy() -> Outcome {
    let mut failures = Vec::new();
    let mut count = 0;
    for a in catalog::<Q>().into_iter().filter(|a| a.is_unital()) {
        count += 1;
        let ok = homotopy_check(&Bimodule::regular(a.clone()), 4).unwrap();
        if !ok.iter().all(|&b| b) {
            failures.push(a.name().to_string());
        }
    }
    Outcome::plain(failures.is_empty(), format!("{count} unital presets, degrees 0..=4, failures: {failures:?}"))
}

fn c3_ground_field() -> Outcome {
    let q = p("ground");
    let hh = hh_complex(&q, 5).unwrap();
    let hc = hc_complex(&q, 6).unwrap();
    let (hh_b, hc_b) = (hh.betti(), hc.betti());
    let pass = hh_b.betti_vec() == vec![1, 0, 0, 0]
        && hc_b.betti_vec() == vec![1, 0, 1, 0, 1]
        && dense_certified_betti(&hh) == hh_b.betti_vec()
        && dense_certified_betti(&hc) == hc_b.betti_vec();
    Outcome::plain(
        pass,
        format!(
            "HH {:?} on {}, HC {:?} on {}",
            hh_b.betti_vec(),
            hh_b.certified_range,
            hc_b.betti_vec(),
            hc_b.certified_range
        ),
    )
}

fn c4_morita(start: Instant) -> Outcome {
    let (q, m2) = (p("ground"), p("matrix(2, ground)"));
    let mut rows = Vec::new();
    let mut pass = true;
    for (label, q_c, m_c) in [
        ("HH", hh_complex(&q, 5).unwrap(), hh_complex(&m2, 5).unwrap()),
        ("HC", hc_complex(&q, 5).unwrap(), hc_complex(&m2, 5).unwrap()),
    ] {
        let range = DegreeRange::new(0, 3);
        let sparse_q = q_c.homology(range, false).unwrap().betti_vec();
        let sparse_m = m_c.homology(range, false).unwrap().betti_vec();
        let dense_q = dense_betti(&q_c, range);
        let dense_m = dense_betti(&m_c, range);
        pass &= sparse_q == sparse_m && sparse_q == dense_q && sparse_m == dense_m;
        rows.push(format!("{label} {sparse_m:?}"));
    }
    let elapsed = start.elapsed();
    pass &= elapsed < Duration::from_secs(120);
    Outcome::plain(pass, format!("M₂(ℚ) {} (budget 120 s)", rows.join(", ")))
}

const FOUR_PRESETS: [&str; 4] = ["ground", "dual_numbers", "truncated_poly(3)", "matrix(2, ground)"];

fn c5_connes() -> Outcome {
    let mut failures = Vec::new();
    for name in FOUR_PRESETS {
        let rep = connes_check(&p(name), 5).unwrap();
        if !rep.exact || rep.range != DegreeRange::new(0, 3) {
            failures.push(format!("{name} at {:?}", rep.failing_degree));
        }
    }
    Outcome::plain(failures.is_empty(), format!("degrees 0..=3, failures: {failures:?}"))
}

fn c6_lambda() -> Outcome {
    let mut failures = Vec::new();
    for name in FOUR_PRESETS {
        let a = p(name);
        let lambda = connes_lambda_complex(&a, 4).unwrap();
        let range = DegreeRange::new(0, 3);
        let lb = lambda.homology(range, false).unwrap().betti_vec();
        let hc = hc_homology(&a, 5).unwrap();
        if hc.certified_range != range || lb != hc.betti_vec() || lb != dense_betti(&lambda, range) {
            failures.push(name);
        }
    }
    Outcome::plain(failures.is_empty(), format!("degrees 0..=3, failures: {failures:?}"))
}

fn c7_graded_pieces() -> Outcome {
    let mut failures = Vec::new();
    let mut count = 0;
    for name in ["dual_to_ground", "trunc3_to_ground", "upper_triangular_to_diagonal"] {
        let e = ext(name);
        let m = Bimodule::regular(e.algebra().clone());
        for kind in [FiltrationKind::Bar, FiltrationKind::Hoch] {
            for n in 0..=2 {
                count += 1;
                let r = graded_piece_f_check(&e, &m, kind, n, 5).unwrap();
                if !r.pass {
                    failures.push(format!("{name} {kind:?} n={n} at {:?}", r.failing_degree));
                }
            }
        }
    }
    Outcome::plain(failures.is_empty(), format!("{count} pieces, failures: {failures:?}"))
}

/// Relative and ideal Betti numbers from dense elimination.
fn oracle_sides(e: &Extension<Q>, columns: usize, d: usize) -> (Vec<usize>, Vec<usize>) {
    let range = DegreeRange::new(0, d as i64 - 2);
    let sa = CyclicBicomplex::new(e.algebra().clone(), d);
    let sb = CyclicBicomplex::new(e.quotient().clone(), d);
    let f = induced_total_map(e.projection(), &sa, &sb, columns).unwrap();
    let rel = dense_betti(&homotopy_fiber(&f).unwrap(), range);
    let ideal = dense_betti(&CyclicBicomplex::new(e.ideal().clone(), d).total(columns).unwrap(), range);
    (ideal, rel)
}

fn c8_wodzicki() -> Outcome {
    let d = 5;
    let cross_check = |e: &Extension<Q>| -> bool {
        let rep = wodzicki_verify(e, d).unwrap();
        let ok = [(&rep.hh, HH_COLUMNS), (&rep.hc, usize::MAX)].into_iter().all(|(t, cols)| {
            let (ideal, rel) = oracle_sides(e, cols, d);
            t.ideal_betti == ideal && t.relative_betti == rel
        });
        ok
    };
    let split = ext("split_product");
    let sq = ext("square_zero");
    let ut = ext("upper_triangular_to_diagonal");
    let split_rep = wodzicki_verify(&split, d).unwrap();
    let sq_rep = wodzicki_verify(&sq, d).unwrap();
    let ut_rep = wodzicki_verify(&ut, d).unwrap();
    let oracles = cross_check(&split) && cross_check(&sq) && cross_check(&ut);
    let sq_fail = !sq_rep.pass;
    let pass = split_rep.pass && sq_fail && oracles;
    let required = split_rep.pass && oracles && !ut_rep.pass && ut_rep.hh.failing_degree == Some(0);
    Outcome {
        pass,
        required,
        detail: format!(
            "split_product {} on {}; square_zero {} (HH ideal {:?} rel {:?}); upper_triangular_to_diagonal {} at degree {:?}; dense oracle {}",
            if split_rep.pass { "PASS" } else { "FAIL" },
            split_rep.hh.range,
            if sq_rep.pass { "PASS" } else { "FAIL" },
            sq_rep.hh.ideal_betti,
            sq_rep.hh.relative_betti,
            if ut_rep.pass { "PASS" } else { "FAIL" },
            ut_rep.hh.failing_degree,
            if oracles { "agrees" } else { "DISAGREES" },
        ),
    }
}

fn c9_lqt(start: Instant) -> Outcome {
    let rep = lqt_verify(&p("ground"), 4, 4, DEFAULT_SIZE_LIMIT).unwrap();
    let elapsed = start.elapsed();
    let pass = rep.agree && rep.ce_betti == vec![1, 1, 0, 1, 1] && elapsed < Duration::from_secs(600);
    Outcome::plain(pass, format!("CE {:?}, Sym model {:?} (budget 600 s)", rep.ce_betti, rep.sym_betti))
}

fn c10_h2() -> Outcome {
    let mut gl_ok = true;
    let mut sl_ok = true;
    let mut stable = true;
    let mut oracle = true;
    let mut rows = Vec::new();
    for name in ["ground", "dual_numbers"] {
        let a = p(name);
        let reps: Vec<_> = [3, 4].into_iter().map(|r| h2_vs_hc1(&a, r, DEFAULT_SIZE_LIMIT).unwrap()).collect();
        stable &= reps[0].h2_gl == reps[1].h2_gl && reps[0].h2_sl == reps[1].h2_sl;
        gl_ok &= reps.iter().all(|r| r.gl_equal);
        sl_ok &= reps.iter().all(|r| r.sl_equal);
        // H₂ at r = 3 again by dense elimination, and HC₁ from the λ-complex.
        let ce = ce_complex(&gl(&*a, 3), 3, DEFAULT_SIZE_LIMIT).unwrap();
        let h2 = dense_betti(&ce, DegreeRange::new(2, 2))[0];
        let lam = connes_lambda_complex(&a, 2).unwrap();
        let hc1 = dense_betti(&lam, DegreeRange::new(1, 1))[0];
        oracle &= h2 == reps[0].h2_gl && hc1 == reps[0].hc1;
        rows.push(format!(
            "{name}: H₂(gl) {}/{} H₂(sl) {}/{} HC₁ {}",
            reps[0].h2_gl, reps[1].h2_gl, reps[0].h2_sl, reps[1].h2_sl, reps[0].hc1
        ));
    }
    Outcome {
        pass: gl_ok && stable && oracle,
        required: sl_ok && stable && oracle,
        detail: format!("{} (r = 3/4)", rows.join("; ")),
    }
}

fn c11_trace() -> Outcome {
    let mut rows = Vec::new();
    let mut pass = true;
    for name in ["ground", "dual_numbers"] {
        let checks = trace_chain_check(&p(name), 2, 3, DEFAULT_SIZE_LIMIT).unwrap();
        pass &= checks.iter().all(|c| c.holds);
        let signs: Vec<String> = checks.iter().map(|c| c.sign.map_or("0".into(), |s| format!("{s:+}"))).collect();
        rows.push(format!("{name} signs [{}]", signs.join(" ")));
    }
    Outcome::plain(pass, format!("n = 0..=3, {}", rows.join(", ")))
}

fn c12_chern() -> Outcome {
    let mut rows = Vec::new();
    let mut pass = true;
    for name in ["dual_to_ground", "matrix_dual", "trunc3_to_ground"] {
        let e = ext(name);
        let rep = chern1(&e, 2, DEFAULT_SAMPLES, DEFAULT_SEED).unwrap();
        let probe = k1_rel_probe(&e, 2, DEFAULT_SAMPLES, DEFAULT_SEED).unwrap();
        pass &= rep.pass && probe.embeds && probe.equal;
        rows.push(format!("{name} span {}/{}", probe.span_dim, probe.relative_hc0));
    }
    Outcome::plain(pass, format!("{} samples, {}", DEFAULT_SAMPLES, rows.join(", ")))
}

/// The whole suite as command-line configurations.
fn suite_configs() -> Vec<RunConfig> {
    let mut out = Vec::new();
    let mut add = |task: Task, f: &dyn Fn(&mut RunConfig)| {
        let mut c = RunConfig::new(task);
        f(&mut c);
        out.push(c);
    };
    add(Task::Hh, &|c| {
        c.options.preset = Some("ground".into());
        c.options.degree_bound = 5;
    });
    add(Task::Hc, &|c| {
        c.options.preset = Some("ground".into());
        c.options.degree_bound = 6;
    });
    for task in [Task::Hh, Task::Hc] {
        add(task, &|c| {
            c.options.preset = Some("matrix(2, ground)".into());
            c.options.degree_bound = 5;
        });
    }
    for name in FOUR_PRESETS {
        add(Task::Connes, &|c| {
            c.options.preset = Some(name.into());
            c.options.degree_bound = 5;
        });
        add(Task::Hunital, &|c| {
            c.options.preset = Some(name.into());
            c.options.degree_bound = 5;
        });
    }
    for name in ["dual_to_ground", "trunc3_to_ground", "upper_triangular_to_diagonal"] {
        for level in 0..=2 {
            add(Task::Filtration, &|c| {
                c.options.ext = Some(name.into());
                c.options.level = level;
                c.options.degree_bound = 5;
            });
        }
    }
    for name in ["split_product", "square_zero", "upper_triangular_to_diagonal"] {
        add(Task::Wodzicki, &|c| {
            c.options.ext = Some(name.into());
            c.options.degree_bound = 5;
        });
    }
    add(Task::Lqt, &|c| {
        c.options.preset = Some("ground".into());
        c.options.rank = 4;
    });
    for name in ["ground", "dual_numbers"] {
        for r in [3, 4] {
            add(Task::H2hc1, &|c| {
                c.options.preset = Some(name.into());
                c.options.rank = r;
            });
        }
        add(Task::Trace, &|c| {
            c.options.preset = Some(name.into());
            c.options.degree_bound = 5;
        });
    }
    for name in ["dual_to_ground", "matrix_dual", "trunc3_to_ground"] {
        add(Task::Chern1, &|c| c.options.ext = Some(name.into()));
    }
    add(Task::Tangent, &|c| {
        c.options.preset = Some("ground".into());
        c.options.degree_bound = 4;
    });
    out
}

fn c13_determinism() -> Outcome {
    let configs = suite_configs();
    let render = |threads: usize| -> Vec<String> {
        configs
            .iter()
            .map(|c| {
                let mut c = c.clone();
                c.options.threads = Some(threads);
                run_with_threads(&c).expect("suite configurations run").to_json()
            })
            .collect()
    };
    let one = render(1);
    let many = render(4);
    let differing: Vec<usize> = (0..configs.len()).filter(|&i| one[i] != many[i]).collect();
    let bytes: usize = one.iter().map(String::len).sum();
    Outcome::plain(
        differing.is_empty(),
        format!("{} reports, {bytes} bytes, 1 vs 4 threads, differing: {differing:?}", configs.len()),
    )
}

fn main() -> ExitCode {
    let criteria: Vec<(u8, &str, Box<dyn Fn(Instant) -> Outcome>)> = vec![
        (1, "complex well-formedness", Box::new(|_| c1_well_formed())),
        (2, "unital contracting homotopy", Box::new(|_| c2_homotopy())),
        (3, "ground-field homology", Box::new(|_| c3_ground_field())),
        (4, "Morita invariance", Box::new(c4_morita)),
        (5, "Connes exact sequence", Box::new(|_| c5_connes())),
        (6, "λ-complex agreement", Box::new(|_| c6_lambda())),
        (7, "filtration graded pieces", Box::new(|_| c7_graded_pieces())),
        (8, "excision verifier", Box::new(|_| c8_wodzicki())),
        (9, "CE of gl₄(ℚ) vs free model", Box::new(c9_lqt)),
        (10, "H₂(gl_r) vs HC₁", Box::new(|_| c10_h2())),
        (11, "trace is a chain map", Box::new(|_| c11_trace())),
        (12, "degree-one Chern character", Box::new(|_| c12_chern())),
        (13, "thread-count determinism", Box::new(|_| c13_determinism())),
    ];
    let mut failures = Vec::new();
    for (id, title, run) in &criteria {
        let start = Instant::now();
        let outcome = run(start);
        let secs = start.elapsed().as_secs_f64();
        let known = KNOWN_UNATTAINABLE.iter().find(|(k, _)| k == id);
        let status = if outcome.pass { "PASS" } else { "FAIL" };
        println!("criterion {id:>2} {status} {title} ({secs:.1} s): {}", outcome.detail);
        match known {
            Some((_, why)) => {
                println!("             known unattainable: {why}");
                if outcome.pass {
                    failures.push(format!("criterion {id} is listed as unattainable but passed"));
                }
                if !outcome.required {
                    failures.push(format!("criterion {id}: attainable parts failed"));
                }
            }
            None if !outcome.pass => failures.push(format!("criterion {id} failed")),
            None => {}
        }
    }
    println!(
        "acceptance: {} criteria, {} known unattainable, {} problems",
        criteria.len(),
        KNOWN_UNATTAINABLE.len(),
        failures.len()
    );
    if failures.is_empty() {
        ExitCode::SUCCESS
    } else {
        for f in &failures {
            eprintln!("{f}");
        }
        ExitCode::FAILURE
    }
}
