//! Acceptance suite: every analytic threshold and property bundle the
//! library must reproduce, one test per criterion, each printing a
//! pass/fail line (visible with `--nocapture`).

use std::time::Instant;

use majdet_core::bounds::{
    bell_separable_bound, joint_probs, pauli_triple_bound, sup_all_states, sup_separable,
    MeasurementSet, OptimizerConfig,
};
use majdet_core::detectors::{
    corollary_detect, local_product_detect, majorization_verdict, pauli_product_pairs,
    subsystem_disorder_detect, tsallis_threshold, Corollary, ThresholdMethod,
};
use majdet_core::entropy::EntropyMeasure;
use majdet_core::probvec::{self, ProbVec};
use majdet_core::quantum::{
    born_probs, pauli_x, pauli_y, pauli_z, projective_from_observable, werner, werner_spectrum,
    DensityMatrix, Observable, Povm, PureState,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

fn pass(name: &str, started: Instant, budget_s: f64) {
    let elapsed = started.elapsed().as_secs_f64();
    assert!(
        elapsed < budget_s,
        "{name}: runtime {elapsed:.2}s exceeds budget {budget_s}s"
    );
    println!("{name}: PASS ({elapsed:.2}s)");
}

/// Smallest q in [0, 1] where `fires` flips from false to true, bisected
/// to the given resolution. The predicate must be monotone in q.
fn bisect_flip(fires: impl Fn(f64) -> bool, resolution: f64) -> f64 {
    assert!(!fires(0.0) && fires(1.0), "predicate must flip inside (0, 1)");
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > resolution {
        let mid = 0.5 * (lo + hi);
        if fires(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn criterion_1_bell_measurement_werner_thresholds() {
    let started = Instant::now();
    for d in 2..=5usize {
        let bound = bell_separable_bound(d);
        let q_star = bisect_flip(
            |q| {
                majorization_verdict(&werner_spectrum(d, q), &bound, 1e-12).is_entangled()
            },
            1e-11,
        );
        let expected = 1.0 / (1.0 + d as f64);
        assert!(
            (q_star - expected).abs() < 1e-9,
            "d = {d}: flip at {q_star}, expected {expected}"
        );
    }
    pass("criterion 1 (Bell-measurement thresholds flip at 1/(1+d))", started, 1.0);
}

#[test]
fn criterion_2_pauli_triple_bound_reproduction() {
    let started = Instant::now();
    let povms = [pauli_x(), pauli_y(), pauli_z()]
        .into_iter()
        .map(|m| projective_from_observable(&Observable::maximal(m).unwrap()).unwrap())
        .collect();
    let ms = MeasurementSet::new(povms).unwrap();
    let cfg = OptimizerConfig::default(); // 64 restarts
    let result = sup_all_states(&ms, &cfg).unwrap();
    let closed = pauli_triple_bound();
    for (j, (got, want)) in result.bound.entries().iter().zip(closed.entries()).enumerate() {
        assert!(
            (got - want).abs() < 1e-4,
            "component {j}: {got} vs closed form {want}"
        );
    }
    // reference decimals for the same vector
    let reference = [0.490499, 0.238054, 0.135724, 0.135724, 0.0, 0.0, 0.0, 0.0];
    for (got, want) in result.bound.entries().iter().zip(reference) {
        assert!((got - want).abs() < 1e-4);
    }
    pass("criterion 2 (three-MUB qubit bound matches closed form)", started, 60.0);
}

#[test]
fn criterion_3_pauli_product_werner_threshold() {
    let started = Instant::now();
    let pairs = pauli_product_pairs();
    let closed = pauli_triple_bound();
    let q_closed = bisect_flip(
        |q| {
            local_product_detect(&werner(2, q).unwrap(), &pairs, &closed, 1e-9)
                .unwrap()
                .is_entangled()
        },
        1e-9,
    );
    let expected = 1.0 / 3.0f64.sqrt();
    assert!(
        (q_closed - expected).abs() < 1e-6,
        "closed-form bound: flip at {q_closed}, expected {expected}"
    );

    let povms = [pauli_x(), pauli_y(), pauli_z()]
        .into_iter()
        .map(|m| projective_from_observable(&Observable::maximal(m).unwrap()).unwrap())
        .collect();
    let ms = MeasurementSet::new(povms).unwrap();
    let optimized = sup_all_states(&ms, &OptimizerConfig::default()).unwrap().bound;
    let q_opt = bisect_flip(
        |q| {
            local_product_detect(&werner(2, q).unwrap(), &pairs, &optimized, 1e-4)
                .unwrap()
                .is_entangled()
        },
        1e-7,
    );
    assert!(
        (q_opt - expected).abs() < 1e-3,
        "optimizer bound: flip at {q_opt}, expected {expected}"
    );
    pass("criterion 3 (Pauli-product threshold at 1/sqrt(3))", started, 60.0);
}

#[test]
fn criterion_4_bell_separable_bound_reproduction() {
    let started = Instant::now();
    for d in [2usize, 3] {
        let ms = MeasurementSet::single(Povm::bell(d));
        let result = sup_separable(&ms, &[d, d], &OptimizerConfig::default()).unwrap();
        let closed = bell_separable_bound(d);
        for (j, (got, want)) in result.bound.entries().iter().zip(closed.entries()).enumerate()
        {
            assert!(
                (got - want).abs() < 1e-4,
                "d = {d}, component {j}: {got} vs {want}"
            );
        }
    }
    pass("criterion 4 (separable Bell bound is flat at 1/d)", started, 120.0);
}

#[test]
fn criterion_5_tsallis_threshold_scan() {
    let started = Instant::now();
    for d in 2..=8usize {
        let point = tsallis_threshold(d, f64::INFINITY).unwrap();
        assert_eq!(point.q_star, 1.0 / (1.0 + d as f64), "d = {d}");
        assert_eq!(point.method, ThresholdMethod::Analytic);
    }
    let t2 = tsallis_threshold(2, 2.0).unwrap();
    assert!((t2.q_star - 1.0 / 3.0f64.sqrt()).abs() < 1e-8);
    for d in 2..=8usize {
        let qs: Vec<f64> = [1.0, 2.0, 5.0, f64::INFINITY]
            .iter()
            .map(|&r| tsallis_threshold(d, r).unwrap().q_star)
            .collect();
        for (k, w) in qs.windows(2).enumerate() {
            assert!(
                w[0] > w[1],
                "d = {d}: threshold did not decrease from order index {k}: {qs:?}"
            );
        }
    }
    pass("criterion 5 (Tsallis thresholds: exact at infinite order, decreasing in order)", started, 5.0);
}

#[test]
fn criterion_6_subsystem_disorder_werner_thresholds() {
    let started = Instant::now();
    for d in 2..=4usize {
        let q_star = bisect_flip(
            |q| {
                subsystem_disorder_detect(&werner(d, q).unwrap(), 1e-9)
                    .unwrap()
                    .0
                    .is_entangled()
            },
            1e-8,
        );
        let expected = 1.0 / (1.0 + d as f64);
        assert!(
            (q_star - expected).abs() < 1e-6,
            "d = {d}: flip at {q_star}, expected {expected}"
        );
    }
    pass("criterion 6 (subsystem-disorder thresholds flip at 1/(1+d))", started, 5.0);
}

#[test]
fn criterion_7_lattice_property_suite() {
    let started = Instant::now();
    let mut rng = ChaCha12Rng::seed_from_u64(0xACCE97);

    // golden flattening case
    let sup = probvec::supremum(&[
        ProbVec::new(vec![0.45, 0.2, 0.2, 0.15]).unwrap(),
        ProbVec::new(vec![0.4, 0.3, 0.3, 0.0]).unwrap(),
    ])
    .unwrap();
    for (a, b) in sup.entries().iter().zip([0.45, 0.275, 0.275, 0.0]) {
        assert!((a - b).abs() < 1e-12, "golden case: {:?}", sup.entries());
    }

    let random_vec = |rng: &mut ChaCha12Rng, dim: usize| {
        let raw: Vec<f64> = (0..dim).map(|_| rng.random_range(1e-3..1.0)).collect();
        let sum: f64 = raw.iter().sum();
        ProbVec::new(raw.into_iter().map(|x| x / sum).collect()).unwrap()
    };
    // convex mixture of random permutations: more disordered than the input
    let mix_down = |rng: &mut ChaCha12Rng, v: &ProbVec| {
        let d = v.len();
        let mut acc = vec![0.0; d];
        let mut weights: Vec<f64> = (0..3).map(|_| rng.random_range(0.01..1.0)).collect();
        let total: f64 = weights.iter().sum();
        for w in weights.iter_mut() {
            *w /= total;
        }
        for &w in &weights {
            let mut idx: Vec<usize> = (0..d).collect();
            for i in (1..d).rev() {
                let j = rng.random_range(0..=i);
                idx.swap(i, j);
            }
            for (slot, &i) in idx.iter().enumerate() {
                acc[slot] += w * v.entries()[i];
            }
        }
        ProbVec::new(acc).unwrap()
    };
    // moving mass from a smaller entry to a larger one: less disordered
    let sharpen_up = |rng: &mut ChaCha12Rng, v: &ProbVec| {
        let mut e = v.sorted_desc().entries().to_vec();
        for _ in 0..3 {
            let i = rng.random_range(0..e.len().saturating_sub(1));
            let j = rng.random_range(i + 1..e.len());
            let delta = rng.random_range(0.0..=e[j]);
            e[i] += delta;
            e[j] -= delta;
            e.sort_by(|a, b| b.partial_cmp(a).unwrap());
        }
        ProbVec::new(e).unwrap()
    };

    for case in 0..1000 {
        let set_len = rng.random_range(2..=4);
        let set: Vec<ProbVec> = (0..set_len)
            .map(|_| {
                let dim = rng.random_range(2..=8);
                random_vec(&mut rng, dim)
            })
            .collect();
        let inf = probvec::infimum(&set).unwrap();
        let sup = probvec::supremum(&set).unwrap();
        for s in &set {
            assert!(inf.majorized_by(s, 1e-9), "case {case}: infimum not a lower bound");
            assert!(s.majorized_by(&sup, 1e-9), "case {case}: supremum not an upper bound");
        }
        // tightness: anything below every member stays below the infimum,
        // anything above every member stays above the supremum
        let w = mix_down(&mut rng, &inf);
        for s in &set {
            assert!(w.majorized_by(s, 1e-9));
        }
        assert!(w.majorized_by(&inf, 1e-9), "case {case}: infimum not greatest");
        let z = sharpen_up(&mut rng, &sup);
        for s in &set {
            assert!(s.majorized_by(&z, 1e-9));
        }
        assert!(sup.majorized_by(&z, 1e-9), "case {case}: supremum not least");
    }
    pass("criterion 7 (lattice bounds and tightness, 1000 random cases)", started, 5.0);
}

fn random_separable(dims: &[usize], max_terms: usize, rng: &mut ChaCha12Rng) -> DensityMatrix {
    let terms = rng.random_range(1..=max_terms);
    let mut states = Vec::with_capacity(terms);
    for _ in 0..terms {
        let mut product = PureState::haar_random(vec![dims[0]], rng);
        for &d in &dims[1..] {
            product = product.tensor(&PureState::haar_random(vec![d], rng));
        }
        states.push(product.to_density());
    }
    let mut weights: Vec<f64> = (0..terms).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = weights.iter().sum();
    for w in weights.iter_mut() {
        *w /= total;
    }
    DensityMatrix::mixture(&states, &weights).unwrap()
}

#[test]
fn criterion_8_soundness_on_separable_states() {
    let started = Instant::now();
    let mut rng = ChaCha12Rng::seed_from_u64(0x50D5);
    let measures = [
        EntropyMeasure::Shannon,
        EntropyMeasure::tsallis(2.0).unwrap(),
        EntropyMeasure::tsallis(5.0).unwrap(),
        EntropyMeasure::tsallis(f64::INFINITY).unwrap(),
        EntropyMeasure::renyi(2.0).unwrap(),
    ];
    let bell = Povm::bell(2);
    let bell_bound = bell_separable_bound(2);
    let pairs = pauli_product_pairs();
    let pauli_bound = pauli_triple_bound();

    let mut false_positives = 0usize;
    for trial in 0..250 {
        // two qubits: all three detectors and their scalar corollaries
        let rho = random_separable(&[2, 2], 10, &mut rng);
        let stats = born_probs(&bell, &rho).unwrap();
        let t1 = majorization_verdict(&stats, &bell_bound, 1e-9);
        let t2 = local_product_detect(&rho, &pairs, &pauli_bound, 1e-9).unwrap();
        let (t3, disorder) = subsystem_disorder_detect(&rho, 1e-9).unwrap();
        for v in [&t1, &t2, &t3] {
            if v.is_entangled() {
                false_positives += 1;
                eprintln!("trial {trial}: majorization false positive");
            }
        }
        let product_stats: Vec<ProbVec> = pairs
            .iter()
            .map(|(a, b)| {
                let povm = majdet_core::detectors::product_measurement(a, b).unwrap();
                born_probs(&povm, &rho).unwrap()
            })
            .collect();
        for m in &measures {
            let c1 =
                corollary_detect(m, std::slice::from_ref(&stats), &bell_bound, Corollary::C1, 1e-9).unwrap();
            let c2 =
                corollary_detect(m, &product_stats, &pauli_bound, Corollary::C2, 1e-9).unwrap();
            let c3 = corollary_detect(
                m,
                &[rho.spectrum()],
                &disorder.lambda_inf,
                Corollary::C3,
                1e-9,
            )
            .unwrap();
            for v in [&c1, &c2, &c3] {
                if v.is_entangled() {
                    false_positives += 1;
                    eprintln!("trial {trial}: scalar false positive with {m}");
                }
            }
        }

        // qubit-qutrit: the subsystem-disorder detector and its corollary
        let rho = random_separable(&[2, 3], 10, &mut rng);
        let (t3, disorder) = subsystem_disorder_detect(&rho, 1e-9).unwrap();
        if t3.is_entangled() {
            false_positives += 1;
        }
        for m in &measures {
            let c3 = corollary_detect(
                m,
                &[rho.spectrum()],
                &disorder.lambda_inf,
                Corollary::C3,
                1e-9,
            )
            .unwrap();
            if c3.is_entangled() {
                false_positives += 1;
            }
        }
    }
    assert_eq!(false_positives, 0, "separable states must never be flagged");
    pass("criterion 8 (zero false positives on 500 separable states)", started, 60.0);
}

#[test]
fn criterion_9_spectrum_estimation() {
    let started = Instant::now();
    let mut rng = ChaCha12Rng::seed_from_u64(0x5BEC);
    let cfg = OptimizerConfig::default();
    for trial in 0..50 {
        let dim = rng.random_range(2..=4);
        let rank = rng.random_range(1..=dim);
        let states: Vec<DensityMatrix> = (0..rank)
            .map(|_| PureState::haar_random(vec![dim], &mut rng).to_density())
            .collect();
        let mut weights: Vec<f64> = (0..rank).map(|_| rng.random_range(0.05..1.0)).collect();
        let total: f64 = weights.iter().sum();
        for w in weights.iter_mut() {
            *w /= total;
        }
        let rho = DensityMatrix::mixture(&states, &weights).unwrap();
        let estimated = majdet_core::detectors::estimate_spectrum(&rho, &cfg).unwrap();
        let exact = rho.spectrum();
        for (j, (a, b)) in estimated.entries().iter().zip(exact.entries()).enumerate() {
            assert!(
                (a - b).abs() < 1e-6,
                "trial {trial}, dim {dim}, component {j}: {a} vs {b}"
            );
        }
    }
    pass("criterion 9 (measurement-search spectrum estimation)", started, 120.0);
}

#[test]
fn bounds_majorize_joint_statistics_of_random_states() {
    // companion soundness check for the optimizer bounds themselves
    let started = Instant::now();
    let povms = [pauli_x(), pauli_y(), pauli_z()]
        .into_iter()
        .map(|m| projective_from_observable(&Observable::maximal(m).unwrap()).unwrap())
        .collect();
    let ms = MeasurementSet::new(povms).unwrap();
    let bound = sup_all_states(&ms, &OptimizerConfig::default()).unwrap().bound;
    let mut rng = ChaCha12Rng::seed_from_u64(0xB0);
    for _ in 0..200 {
        let s1 = PureState::haar_random(vec![2], &mut rng).to_density();
        let s2 = PureState::haar_random(vec![2], &mut rng).to_density();
        let w = rng.random_range(0.0..1.0);
        let rho = DensityMatrix::mixture(&[s1, s2], &[w, 1.0 - w]).unwrap();
        let joint = joint_probs(&ms, &rho).unwrap();
        assert!(joint.majorized_by(&bound, 1e-6));
    }

    let ms = MeasurementSet::single(Povm::bell(2));
    let sep = sup_separable(&ms, &[2, 2], &OptimizerConfig::default())
        .unwrap()
        .bound;
    for _ in 0..200 {
        let rho = random_separable(&[2, 2], 10, &mut rng);
        let joint = joint_probs(&ms, &rho).unwrap();
        assert!(joint.majorized_by(&sep, 1e-6));
    }
    pass("companion (optimizer bounds sound on random states)", started, 120.0);
}
