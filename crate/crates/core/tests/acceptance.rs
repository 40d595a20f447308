//! Acceptance suite: one PASS/FAIL line per criterion.

use nalgebra::{DMatrix, SVD};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use quasifold_core::construction::{
    build_construction, classify, vertex_charts, Classification, DelzantData,
};
use quasifold_core::corpus::{self, PENTAGON_A, PENTAGON_C};
use quasifold_core::field::{Field, Matrix, Scalar};
use quasifold_core::polytope::{check_rational, LatticeCertificate};
use quasifold_core::verify::{
    check_regular_value, hamiltonian_sweep, sample_level_set, verify_moment_image, Sample,
    Tolerances,
};
use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

fn construct(name: &str) -> DelzantData {
    let doc = corpus::builtin(name)
        .expect("builtin exists")
        .expect("builtin validates");
    build_construction(&doc.polytope, &doc.extra_generators).expect("construction succeeds")
}

fn show(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

/// Exact proportionality `u ∥ v` for nonzero vectors.
fn proportional(u: &[Scalar], v: &[Scalar]) -> bool {
    u.len() == v.len()
        && u.iter().any(|x| !x.is_zero())
        && (0..u.len()).all(|i| (0..u.len()).all(|j| &u[i] * &v[j] == &u[j] * &v[i]))
}

fn criterion_1() -> Outcome {
    let dd = construct("triangle-sqrt2");
    let f = dd.field().clone();
    let (s, t) = (f.one(), f.generator());
    let expected = vec![t.clone(), s.clone(), f.one()];
    let kernel = dd.kernel_basis();
    ensure(kernel.len() == 1, || {
        format!("kernel has dimension {}", kernel.len())
    })?;
    ensure(proportional(&kernel[0], &expected), || {
        format!("kernel {} not proportional to (t, s, 1)", show(&kernel[0]))
    })?;
    Ok(format!(
        "kernel basis {} is proportional to (t, s, 1)",
        show(&kernel[0])
    ))
}

fn criterion_2() -> Outcome {
    let dd = construct("interval-sqrt2");
    let f = dd.field().clone();
    let (s, t) = (f.one(), f.generator());
    let b = &dd.kernel_basis()[0];
    let coefficients = vec![b[0].clone(), b[1].clone(), dd.psi_constant()[0].clone()];
    let s_over_t = s.checked_div(&t).unwrap();
    let expected = vec![f.one(), s_over_t, -&s];
    ensure(proportional(&coefficients, &expected), || {
        format!(
            "Ψ coefficients {} not proportional to (1, s/t, -s)",
            show(&coefficients)
        )
    })?;
    let ratio = coefficients[0].checked_div(&expected[0]).unwrap();
    Ok(format!(
        "Ψ coefficients {} = ({ratio}) · (1, s/t, -s)",
        show(&coefficients)
    ))
}

/// Orthogonal projector onto the row space of `m`.
fn row_projector(m: &DMatrix<f64>) -> (usize, DMatrix<f64>) {
    let svd = SVD::new(m.clone(), false, true);
    let v_t = svd.v_t.unwrap();
    let smax = svd.singular_values.max();
    let rows: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] > 1e-12 * smax)
        .collect();
    let basis = v_t.select_rows(&rows);
    (rows.len(), basis.transpose() * basis)
}

/// The printed level-set system as rows `[coefficients of |z_j|² | -level]`,
/// with the middle level given by `middle`.
fn pentagon_rows(f: &Field, middle: &Scalar) -> Vec<Vec<Scalar>> {
    let a = f.parse(PENTAGON_A).unwrap();
    let two_a = &f.from_int(2) * &a;
    let sqrt5 = f.parse("8*θ^2 - 5").unwrap();
    let half_sqrt5 = sqrt5.checked_div(&f.from_int(2)).unwrap();
    let (zero, one) = (f.zero(), f.one());
    vec![
        vec![
            one.clone(),
            zero.clone(),
            zero.clone(),
            one.clone(),
            -&two_a,
            -&half_sqrt5,
        ],
        vec![
            zero.clone(),
            one.clone(),
            zero.clone(),
            two_a.clone(),
            two_a.clone(),
            -middle,
        ],
        vec![
            zero.clone(),
            zero.clone(),
            one.clone(),
            -&two_a,
            one.clone(),
            -&half_sqrt5,
        ],
    ]
}

fn to_f64(rows: &[Vec<Scalar>]) -> DMatrix<f64> {
    DMatrix::from_fn(rows.len(), rows[0].len(), |i, j| rows[i][j].to_f64())
}

fn criterion_3() -> Outcome {
    let dd = construct("pentagon");
    let f = dd.field().clone();
    let sqrt5 = f.parse("8*θ^2 - 5").unwrap();
    ensure((sqrt5.to_f64() - 5f64.sqrt()).abs() < 1e-15, || {
        "√5 expression is wrong".into()
    })?;
    let c = f.parse(PENTAGON_C).unwrap();
    let corrected = -(&sqrt5 * &c);
    let literal = &sqrt5 * &c;

    let computed = dd.level_set_affine_map();
    let (rank, p_computed) = row_projector(&computed);
    ensure(rank == 3, || {
        format!("computed level-set map has rank {rank}")
    })?;
    let (printed_rank, p_printed) = row_projector(&to_f64(&pentagon_rows(&f, &corrected)));
    ensure(printed_rank == 3, || {
        format!("printed system has rank {printed_rank}")
    })?;
    let distance = (&p_computed - &p_printed).amax();
    ensure(distance <= 1e-9, || {
        format!("row spaces differ by {distance:e}")
    })?;

    // the same identity, exactly
    let mut exact: Vec<Vec<Scalar>> = dd
        .kernel_basis()
        .iter()
        .zip(dd.psi_constant())
        .map(|(b, k)| b.iter().cloned().chain([k]).collect())
        .collect();
    exact.extend(pentagon_rows(&f, &corrected));
    let stacked = Matrix::from_rows(&f, &exact).unwrap().rank();
    ensure(stacked == 3, || {
        format!("exact stacked rank {stacked}, expected 3")
    })?;

    // with the middle level exactly as printed, the system leaves the row space
    let mut literal_rows = exact[..3].to_vec();
    literal_rows.push(pentagon_rows(&f, &literal)[1].clone());
    let literal_rank = Matrix::from_rows(&f, &literal_rows).unwrap().rank();
    ensure(literal_rank == 4, || {
        "printed middle level unexpectedly consistent".into()
    })?;
    Ok(format!(
        "projector distance {distance:.2e}; middle level is -√5·c = {:.6} (printed √5·c = {:.6} is negative and infeasible)",
        corrected.to_f64(),
        literal.to_f64()
    ))
}

const SAMPLES: usize = 10_000;
const SEED: u64 = 0;

struct Sampled {
    dd: DelzantData,
    samples: Vec<Sample>,
    sampling: Duration,
}

fn sample_corpus() -> Vec<(&'static str, Sampled)> {
    corpus::simple_names()
        .map(|name| {
            let start = Instant::now();
            let dd = construct(name);
            let samples = sample_level_set(&dd, SAMPLES, SEED).expect("sampling succeeds");
            let sampling = start.elapsed();
            (
                name,
                Sampled {
                    dd,
                    samples,
                    sampling,
                },
            )
        })
        .collect()
}

fn criterion_4(corpus: &[(&str, Sampled)]) -> Outcome {
    let tol = Tolerances::default();
    let mut elapsed = Duration::ZERO;
    let (mut worst_roundtrip, mut worst_containment, mut worst_gap): (f64, f64, f64) =
        (0.0, 0.0, 0.0);
    let mut pentagon_hausdorff = f64::NAN;
    for (name, s) in corpus {
        let start = Instant::now();
        let report = verify_moment_image(&s.dd, &s.samples, SEED);
        elapsed += start.elapsed() + s.sampling;
        ensure(report.max_level_residual <= tol.level_set, || {
            format!("{name}: level residual {:e}", report.max_level_residual)
        })?;
        ensure(report.max_containment_violation <= tol.containment, || {
            format!(
                "{name}: containment violation {:e}",
                report.max_containment_violation
            )
        })?;
        ensure(report.max_roundtrip_error <= tol.roundtrip, || {
            format!("{name}: round trip {:e}", report.max_roundtrip_error)
        })?;
        let gap = report
            .vertex_attainment_gaps
            .iter()
            .copied()
            .fold(0.0, f64::max);
        ensure(
            report.vertex_attainment_gaps.len() == s.dd.polytope().vertices().len(),
            || format!("{name}: missing vertices"),
        )?;
        ensure(gap <= tol.attainment, || {
            format!("{name}: vertex attainment gap {gap:e}")
        })?;
        if *name == "pentagon" {
            pentagon_hausdorff = report.image_hausdorff;
            ensure(report.image_hausdorff <= 0.05, || {
                format!("pentagon image hull is {} from Δ", report.image_hausdorff)
            })?;
        }
        worst_roundtrip = worst_roundtrip.max(report.max_roundtrip_error);
        worst_containment = worst_containment.max(report.max_containment_violation);
        worst_gap = worst_gap.max(gap);
    }
    ensure(elapsed < Duration::from_secs(30), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{} polytopes x {SAMPLES} samples in {elapsed:.2?}: round trip {worst_roundtrip:.1e}, containment {worst_containment:.1e}, vertex gap {worst_gap:.1e}, pentagon hull distance {pentagon_hausdorff:.3}",
        corpus.len()
    ))
}

/// Closure of the generators under addition in `(ℚ/ℤ)ⁿ`.
fn enumerate_group(generators: &[Vec<Scalar>]) -> usize {
    let reduce = |v: &[Scalar]| -> Vec<Scalar> { v.iter().map(Scalar::fract).collect() };
    let n = generators.first().map_or(0, Vec::len);
    let f = generators[0][0].field().clone();
    let zero: Vec<Scalar> = vec![f.zero(); n];
    let key = |v: &[Scalar]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let mut seen: BTreeSet<Vec<String>> = BTreeSet::from([key(&zero)]);
    let mut frontier = vec![zero];
    while let Some(x) = frontier.pop() {
        for g in generators {
            let y = reduce(&x.iter().zip(g).map(|(a, b)| a + b).collect::<Vec<_>>());
            if seen.insert(key(&y)) {
                frontier.push(y);
            }
        }
    }
    seen.len()
}

fn orders(dd: &DelzantData) -> Vec<Option<BigInt>> {
    vertex_charts(dd)
        .unwrap()
        .into_iter()
        .map(|c| c.group.order)
        .collect()
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let dd = construct("interval-sqrt2");
    let f = dd.field().clone();
    let t_over_s = f.generator();
    let s_over_t = t_over_s.inverse().unwrap();
    let charts = vertex_charts(&dd).unwrap();
    for (chart, ratio) in charts.iter().zip([&t_over_s, &s_over_t]) {
        ensure(!chart.group.finite && chart.group.order.is_none(), || {
            "quasisphere group is finite".into()
        })?;
        let is_integer = |x: Scalar| x.fract().is_zero();
        let hit = chart
            .group
            .generators
            .iter()
            .any(|c| is_integer(&c[0] - ratio) || is_integer(&c[0] + ratio));
        ensure(hit, || {
            format!(
                "vertex {}: no generator congruent to ±{ratio} mod 1",
                chart.fixed_point.vertex_index
            )
        })?;
    }

    let one = Some(BigInt::one());
    for k in [2i64, 3, 5] {
        let got = orders(&construct(&format!("teardrop-{k}")));
        ensure(got == vec![one.clone(), Some(BigInt::from(k))], || {
            format!("teardrop-{k}: orders {got:?}")
        })?;
    }
    for name in ["sphere", "cp2"] {
        let got = orders(&construct(name));
        ensure(got.iter().all(|o| o == &one), || {
            format!("{name}: orders {got:?}")
        })?;
    }

    let mut checked = 0;
    let finite: Vec<String> = ["sphere", "cp2", "square", "cube"]
        .into_iter()
        .map(String::from)
        .chain((2..=5).flat_map(|k| [format!("teardrop-{k}"), format!("rugby-{k}")]))
        .collect();
    for name in &finite {
        let Some(Ok(doc)) = corpus::builtin(name) else {
            continue;
        };
        let dd = build_construction(&doc.polytope, &doc.extra_generators).unwrap();
        for chart in vertex_charts(&dd).unwrap() {
            let brute = enumerate_group(&chart.group.generators);
            let smith = chart.group.order.clone().unwrap();
            ensure(BigInt::from(brute) == smith, || {
                format!(
                    "{name} vertex {}: Smith order {smith}, enumeration {brute}",
                    chart.fixed_point.vertex_index
                )
            })?;
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "quasisphere generators ≡ ±t/s, ±s/t mod 1; teardrop orders (1, k); Smith form matches enumeration at {checked} vertices; {elapsed:.2?}"
    ))
}

fn criterion_6() -> Outcome {
    let mut expected: BTreeMap<String, Classification> = BTreeMap::new();
    for name in ["sphere", "cp2", "square", "cube"] {
        expected.insert(name.into(), Classification::Manifold);
    }
    for k in [2, 3, 5] {
        expected.insert(format!("teardrop-{k}"), Classification::Orbifold);
        expected.insert(format!("rugby-{k}"), Classification::Orbifold);
    }
    for name in ["interval-sqrt2", "triangle-sqrt2", "pentagon"] {
        expected.insert(name.into(), Classification::Quasifold);
    }
    let names: BTreeSet<String> = corpus::simple_names().map(String::from).collect();
    ensure(names == expected.keys().cloned().collect(), || {
        format!("corpus is {names:?}")
    })?;
    for (name, want) in &expected {
        let dd = construct(name);
        let evidence = classify(&dd).map_err(|e| format!("{name}: {e}"))?;
        ensure(evidence.classification == *want, || {
            format!("{name}: {} instead of {want}", evidence.classification)
        })?;
    }
    Ok(format!(
        "{} entries classified; lattice route agrees with vertex groups",
        expected.len()
    ))
}

fn criterion_7(corpus: &[(&str, Sampled)]) -> Outcome {
    let tol = Tolerances::default();
    let mut worst = (f64::INFINITY, "");
    for (name, s) in corpus {
        let r = check_regular_value(&s.dd, &s.samples, tol.rank);
        ensure(r.full_rank, || {
            format!("{name}: margin {:e}", r.min_relative_margin)
        })?;
        if r.min_relative_margin < worst.0 {
            worst = (r.min_relative_margin, name);
        }
    }
    Ok(format!(
        "smallest relative margin {:.3e} ({})",
        worst.0, worst.1
    ))
}

fn criterion_8(corpus: &[(&str, Sampled)]) -> Outcome {
    let tol = Tolerances::default();
    let (mut worst, mut lo, mut hi) = (0.0f64, f64::INFINITY, f64::NEG_INFINITY);
    for (name, s) in corpus {
        let r = hamiltonian_sweep(&s.dd, &s.samples, 100, 1e-5, SEED).map_err(|e| e.to_string())?;
        ensure(r.pairs == 100, || format!("{name}: {} pairs", r.pairs))?;
        ensure(r.max_residual <= tol.hamiltonian, || {
            format!("{name}: residual {:e}", r.max_residual)
        })?;
        let (a, b) = tol.hamiltonian_order;
        ensure((a..=b).contains(&r.observed_order), || {
            format!(
                "{name}: observed order {:.3} from {:?}",
                r.observed_order, r.scaling
            )
        })?;
        worst = worst.max(r.max_residual);
        lo = lo.min(r.observed_order);
        hi = hi.max(r.observed_order);
    }
    Ok(format!(
        "max residual {worst:.2e} at h = 1e-5; observed order in [{lo:.3}, {hi:.3}]"
    ))
}

fn criterion_9() -> Outcome {
    for name in corpus::simple_names() {
        let dd = construct(name);
        let (n, d, k) = (dd.dim(), dd.facet_count(), dd.kernel_basis().len());
        ensure(k == d - n, || {
            format!("{name}: kernel dimension {k}, expected {}", d - n)
        })?;
        ensure(dd.manifold_dimension() == 2 * d - 2 * k, || {
            format!("{name}: dim M != 2d - 2 dim N")
        })?;
        ensure(dd.manifold_dimension() == 2 * n, || {
            format!("{name}: dim M = {}", dd.manifold_dimension())
        })?;
    }
    Ok("dim M = 2d - 2 dim N = 2n on every entry".into())
}

fn criterion_10() -> Outcome {
    let start = Instant::now();
    for name in ["pentagon", "interval-sqrt2"] {
        let doc = corpus::builtin(name).unwrap().unwrap();
        let cert = check_rational(&doc.polytope);
        ensure(!cert.is_rational(), || format!("{name} reported rational"))?;
    }
    for name in ["square", "cube", "cp2"] {
        let doc = corpus::builtin(name).unwrap().unwrap();
        let p = &doc.polytope;
        let LatticeCertificate::Rational { basis, coordinates } = check_rational(p) else {
            return Err(format!("{name} reported not rational"));
        };
        for (normal, coords) in p.normals().iter().zip(&coordinates) {
            for i in 0..p.dim() {
                let mut sum = p.field().zero();
                for (b, c) in basis.iter().zip(coords) {
                    let c = p.field().from_rational(c.clone().into());
                    sum = &sum + &(&c * &b[i]);
                }
                ensure(sum == normal[i], || {
                    format!("{name}: coordinates do not reproduce a normal")
                })?;
            }
        }
        ensure(!coordinates.iter().flatten().all(Zero::is_zero), || {
            format!("{name}: empty certificate")
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "pentagon, interval-sqrt2 not rational; square, cube, cp2 certified; {elapsed:.2?}"
    ))
}

/// Written past the test harness's output capture so the summary always shows.
fn line(text: String) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
}

#[test]
fn acceptance() {
    let corpus = sample_corpus();
    let results: Vec<(u32, Outcome)> = vec![
        (1, criterion_1()),
        (2, criterion_2()),
        (3, criterion_3()),
        (4, criterion_4(&corpus)),
        (5, criterion_5()),
        (6, criterion_6()),
        (7, criterion_7(&corpus)),
        (8, criterion_8(&corpus)),
        (9, criterion_9()),
        (10, criterion_10()),
    ];
    let mut failed = Vec::new();
    for (k, outcome) in &results {
        match outcome {
            Ok(detail) => line(format!("criterion {k:>2}: PASS  {detail}")),
            Err(detail) => {
                line(format!("criterion {k:>2}: FAIL  {detail}"));
                failed.push(*k);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
