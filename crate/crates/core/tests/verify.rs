use num_complex::Complex64;
use quasifold_core::construction::{build_construction, moment_psi, DelzantData};
use quasifold_core::corpus;
use quasifold_core::plot::images;
use quasifold_core::polytope::parse_document;
use quasifold_core::verify::{
    check_hamiltonian_identity, check_invariance, run_verification, sample_level_set, torus_act,
    verify_moment_image, VerifyConfig, VerifyError,
};

fn construct(name: &str) -> DelzantData {
    let doc = corpus::builtin(name).unwrap().unwrap();
    build_construction(&doc.polytope, &doc.extra_generators).unwrap()
}

#[test]
fn square_round_trip() {
    let dd = construct("square");
    let samples = sample_level_set(&dd, 10_000, 0).unwrap();
    let report = verify_moment_image(&dd, &samples, 0);
    assert!(report.max_roundtrip_error <= 1e-8);
    assert_eq!(report.vertex_attainment_gaps.len(), 4);
}

#[test]
fn triangle_vertex_attainment() {
    let dd = construct("triangle-sqrt2");
    let samples = sample_level_set(&dd, 10, 0).unwrap();
    let report = verify_moment_image(&dd, &samples, 0);
    assert!(report.vertex_attainment_gaps.iter().all(|&g| g <= 1e-9));
}

#[test]
fn triangle_kernel_orbits_fix_phi() {
    let dd = construct("triangle-sqrt2");
    let (s, t) = (1.0, std::f64::consts::SQRT_2);
    let samples = sample_level_set(&dd, 200, 4).unwrap();
    let phi = images(&dd, &samples);
    for (k, sample) in samples.iter().enumerate() {
        let sigma = 0.37 * k as f64 - 11.0;
        let theta: Vec<f64> = [sigma * t, sigma * s, sigma]
            .iter()
            .map(|x| x.rem_euclid(1.0))
            .collect();
        let moved = phi_at(&dd, &torus_act(&theta, &sample.z));
        assert!(phi[k]
            .iter()
            .zip(&moved)
            .all(|(a, b)| (a - b).abs() <= 1e-8));
    }
}

fn phi_at(dd: &DelzantData, z: &[Complex64]) -> Vec<f64> {
    let sample = quasifold_core::verify::Sample {
        mu: vec![],
        phases: vec![],
        z: z.to_vec(),
    };
    images(dd, &[sample]).remove(0)
}

#[test]
fn invariance_on_corpus() {
    for name in ["cp2", "pentagon", "interval-sqrt2", "rugby-3"] {
        let dd = construct(name);
        let samples = sample_level_set(&dd, 500, 1).unwrap();
        let r = check_invariance(&dd, &samples, 1);
        assert!(r.max_torus_psi_residual <= 1e-9, "{name}");
        assert!(r.max_kernel_phi_residual <= 1e-8, "{name}");
        assert_eq!(r.effectiveness_witness, Some(0), "{name}");
    }
}

#[test]
fn torus_preserves_level_set() {
    let dd = construct("cube");
    let s = &sample_level_set(&dd, 1, 2).unwrap()[0];
    let moved = torus_act(&[0.1, 0.2, 0.3, 0.4, 0.5, 0.6], &s.z);
    assert!(moment_psi(&moved, &dd)
        .unwrap()
        .iter()
        .all(|x| x.abs() <= 1e-9));
}

#[test]
fn pentagon_hamiltonian_identity() {
    let dd = construct("pentagon");
    for (k, s) in sample_level_set(&dd, 25, 5).unwrap().iter().enumerate() {
        let angle = k as f64;
        let x = [angle.cos(), angle.sin()];
        assert!(check_hamiltonian_identity(&dd, &s.z, &x, 1e-5).unwrap() <= 1e-6);
    }
}

#[test]
fn reports_are_deterministic() {
    let dd = construct("triangle-sqrt2");
    let config = VerifyConfig {
        samples: 500,
        seed: 3,
        ..VerifyConfig::default()
    };
    let (_, a) = run_verification(&dd, &config).unwrap();
    let (_, b) = run_verification(&dd, &config).unwrap();
    assert!(a.passed(), "{:?}", a.failures);
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
}

#[test]
fn thin_sliver_stalls() {
    let text = r#"{"dimension": 2, "facets": [
        {"normal": ["1", "-1"], "offset": "-1/10000000"},
        {"normal": ["-1", "1"], "offset": "-1/10000000"},
        {"normal": ["1", "0"], "offset": "0"},
        {"normal": ["-1", "0"], "offset": "-1"}]}"#;
    let doc = parse_document(text).unwrap();
    let dd = build_construction(&doc.polytope, &[]).unwrap();
    assert!(matches!(
        sample_level_set(&dd, 10, 0),
        Err(VerifyError::RejectionStall { .. })
    ));
}
