//! Acceptance suite, run without the libtest harness so that every
//! criterion prints its PASS/FAIL line: `cargo test -p stabilizer-core --test acceptance`.

use std::collections::{BTreeMap, HashSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stabilizer_core::amplitude::BasisBits;
use stabilizer_core::bench::{
    gate_budget, log_log_slope, median, quadratic_fit, random_circuit, random_state,
};
use stabilizer_core::frames::frame_inner_product;
use stabilizer_core::geometry::{enumerate_states, nearest_neighbors, report, superpose};
use stabilizer_core::metric::pow2_neg_half;
use stabilizer_core::oracle::{dense_inner_product, fidelity, matrix_to_state};
use stabilizer_core::synth::{apply_circuit, conforms_to_template};
use stabilizer_core::tableau::matrix_from_strs;
use stabilizer_core::{
    basis_norm_circuit, inner_product, reverse, DenseState, Gate, PauliLiteral, PauliString,
    PhaseVector, StabilizerFrame, StabilizerMatrix,
};

// Tolerances.
const IP_TOL: f64 = 1e-12;
const SYNTH_TOL: f64 = 1e-10;
const ROUND_TRIP_TOL: f64 = 1e-10;
const SUPERPOSE_TOL: f64 = 1e-10;
const FRAME_TOL: f64 = 1e-9;
const SLOPE_RANGE: (f64, f64) = (1.5, 3.5);
const MIN_R2: f64 = 0.95;
const FREQ_TOL: f64 = 0.02;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(elapsed < limit, || format!("{what} took {elapsed:?}, limit {limit:?}"))
}

/// All sixty two-qubit states: shorthand amplitudes, generators, angle to |00⟩.
const TWO_QUBIT_STATES: [(&str, &str, &str); 60] = [
    ("1,1,1,1", "IX, XI", "π/3"),
    ("1,-1,1,-1", "-IX, XI", "π/3"),
    ("1,1,-1,-1", "IX, -XI", "π/3"),
    ("1,-1,-1,1", "-IX, -XI", "π/3"),
    ("1,1,i,i", "IX, YI", "π/3"),
    ("1,-1,i,-i", "-IX, YI", "π/3"),
    ("1,1,-i,-i", "IX, -YI", "π/3"),
    ("1,-1,-i,i", "-IX, -YI", "π/3"),
    ("1,1,0,0", "IX, ZI", "π/4"),
    ("1,-1,0,0", "-IX, ZI", "π/4"),
    ("0,0,1,1", "IX, -ZI", "⊥"),
    ("0,0,1,-1", "-IX, -ZI", "⊥"),
    ("1,i,1,i", "IY, XI", "π/3"),
    ("1,-i,1,-i", "-IY, XI", "π/3"),
    ("1,i,-1,-i", "IY, -XI", "π/3"),
    ("1,-i,-1,i", "-IY, -XI", "π/3"),
    ("1,i,i,-1", "IY, YI", "π/3"),
    ("1,-i,i,1", "-IY, YI", "π/3"),
    ("1,i,-i,1", "IY, -YI", "π/3"),
    ("1,-i,-i,-1", "-IY, -YI", "π/3"),
    ("1,i,0,0", "IY, ZI", "π/4"),
    ("1,-i,0,0", "-IY, ZI", "π/4"),
    ("0,0,1,i", "IY, -ZI", "⊥"),
    ("0,0,1,-i", "-IY, -ZI", "⊥"),
    ("1,0,1,0", "IZ, XI", "π/4"),
    ("0,1,0,1", "-IZ, XI", "⊥"),
    ("1,0,-1,0", "IZ, -XI", "π/4"),
    ("0,1,0,-1", "-IZ, -XI", "⊥"),
    ("1,0,i,0", "IZ, YI", "π/4"),
    ("0,1,0,i", "-IZ, YI", "⊥"),
    ("1,0,-i,0", "IZ, -YI", "π/4"),
    ("0,1,0,-i", "-IZ, -YI", "⊥"),
    ("1,0,0,0", "IZ, ZI", "0"),
    ("0,1,0,0", "-IZ, ZI", "⊥"),
    ("0,0,1,0", "IZ, -ZI", "⊥"),
    ("0,0,0,1", "-IZ, -ZI", "⊥"),
    ("0,1,1,0", "XX, YY", "⊥"),
    ("1,0,0,-1", "-XX, YY", "π/4"),
    ("1,0,0,1", "XX, -YY", "π/4"),
    ("0,1,-1,0", "-XX, -YY", "⊥"),
    ("1,0,0,i", "XY, YX", "π/4"),
    ("0,1,i,0", "-XY, YX", "⊥"),
    ("0,1,-i,0", "XY, -YX", "⊥"),
    ("1,0,0,-i", "-XY, -YX", "π/4"),
    ("1,1,1,-1", "XZ, ZX", "π/3"),
    ("1,1,-1,1", "-XZ, ZX", "π/3"),
    ("1,-1,1,1", "XZ, -ZX", "π/3"),
    ("1,-1,-1,-1", "-XZ, -ZX", "π/3"),
    ("1,i,1,-i", "XZ, ZY", "π/3"),
    ("1,i,-1,i", "-XZ, ZY", "π/3"),
    ("1,-i,1,i", "XZ, -ZY", "π/3"),
    ("1,-i,-1,-i", "-XZ, -ZY", "π/3"),
    ("1,1,i,-i", "YZ, ZX", "π/3"),
    ("1,1,-i,i", "-YZ, ZX", "π/3"),
    ("1,-1,i,i", "YZ, -ZX", "π/3"),
    ("1,-1,-i,-i", "-YZ, -ZX", "π/3"),
    ("1,i,i,1", "YZ, ZY", "π/3"),
    ("1,i,-i,-1", "-YZ, ZY", "π/3"),
    ("1,-i,i,-1", "YZ, -ZY", "π/3"),
    ("1,-i,-i,1", "-YZ, -ZY", "π/3"),
];

fn parse_pair(gens: &str) -> StabilizerMatrix {
    let rows: Vec<&str> = gens.split(", ").collect();
    matrix_from_strs(&rows).expect("table generators are valid")
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let states = enumerate_states(2).map_err(|e| e.to_string())?;
    let rows = report(&states).map_err(|e| e.to_string())?;
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for r in &rows {
        *counts.entry(r.angle.clone()).or_default() += 1;
    }
    let want: BTreeMap<String, usize> = [("0", 1), ("π/4", 12), ("π/3", 32), ("⊥", 15)]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect();
    ensure(counts == want, || format!("angle multiset {counts:?}"))?;

    let enumerated: BTreeMap<String, (String, String)> = states
        .iter()
        .zip(&rows)
        .map(|(m, r)| (m.canonical_key(), (r.amplitudes.clone(), r.angle.clone())))
        .collect();
    for (amps, gens, angle) in TWO_QUBIT_STATES {
        let mut m = parse_pair(gens);
        m.canonicalize_quiet();
        let (got_amps, got_angle) = enumerated
            .get(&m.canonical_key())
            .ok_or_else(|| format!("{gens} not among enumerated states"))?;
        ensure(got_amps == amps && got_angle == angle, || {
            format!("{gens}: got {got_amps} at {got_angle}, table has {amps} at {angle}")
        })?;
    }
    let distinct: HashSet<String> = TWO_QUBIT_STATES
        .iter()
        .map(|(_, g, _)| {
            let mut m = parse_pair(g);
            m.canonicalize_quiet();
            m.canonical_key()
        })
        .collect();
    ensure(distinct.len() == 60, || format!("table rows cover {} states", distinct.len()))?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(1), "two-qubit table")?;
    Ok(format!("60 states, counts {counts:?}, {elapsed:.2?}"))
}

fn criterion_2() -> Outcome {
    let mut sizes = Vec::new();
    for n in 1..=3 {
        let start = Instant::now();
        let states = enumerate_states(n).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        if n == 3 {
            within(elapsed, Duration::from_secs(30), "n = 3 enumeration")?;
        }
        let keys: HashSet<String> = states.iter().map(|m| m.canonical_key()).collect();
        ensure(keys.len() == states.len(), || format!("duplicates at n = {n}"))?;
        sizes.push(states.len());
    }
    ensure(sizes == [6, 60, 1080], || format!("sizes {sizes:?}"))?;
    for n in 2..=3 {
        let want = 2 * ((1 << n) + 1) * sizes[n - 2];
        ensure(sizes[n - 1] == want, || format!("recurrence fails at n = {n}"))?;
    }
    Ok(format!("counts {sizes:?}"))
}

fn check_neighbors(base: &StabilizerMatrix) -> Result<(), String> {
    let n = base.n();
    let set = nearest_neighbors(base).map_err(|e| e.to_string())?;
    let want = 4 * ((1 << n) - 1);
    ensure(set.neighbors.len() == want, || {
        format!("{} neighbors for\n{base}", set.neighbors.len())
    })?;
    for e in &set.neighbors {
        let r = inner_product(base, e).map_err(|e| e.to_string())?;
        ensure(r.s_exponent == Some(1), || format!("neighbor at {:?}", r.s_exponent))?;
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    let mut checked = 0;
    for n in 1..=2 {
        for base in enumerate_states(n).map_err(|e| e.to_string())? {
            check_neighbors(&base)?;
            checked += 1;
        }
    }
    let three = enumerate_states(3).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for i in sample(&mut rng, three.len(), 60) {
        check_neighbors(&three[i])?;
        checked += 1;
    }
    Ok(format!("{checked} bases (66 exhaustive + 60 three-qubit)"))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut histogram = BTreeMap::new();
    for _ in 0..1000 {
        let n = rng.random_range(2..=6);
        let a = random_state(n, rng.random_range(0.5..3.0), &mut rng);
        let b = if rng.random_bool(0.4) {
            let mut b = a.clone();
            let c = random_circuit(n, rng.random_range(0.1..0.6), &mut rng);
            apply_circuit(&mut b, &c, &mut rng).map_err(|e| e.to_string())?;
            b
        } else {
            random_state(n, rng.random_range(0.5..3.0), &mut rng)
        };
        let r = inner_product(&a, &b).map_err(|e| e.to_string())?;
        let dense = dense_inner_product(
            &matrix_to_state(&a).map_err(|e| e.to_string())?,
            &matrix_to_state(&b).map_err(|e| e.to_string())?,
        )
        .map_err(|e| e.to_string())?
        .norm();
        ensure((r.magnitude - dense).abs() <= IP_TOL, || {
            format!("stabilizer {} vs dense {dense}", r.magnitude)
        })?;
        let quantized = match r.s_exponent {
            None => r.magnitude.to_bits() == 0f64.to_bits(),
            Some(s) => s as usize <= n && r.magnitude.to_bits() == pow2_neg_half(s).to_bits(),
        };
        ensure(quantized, || format!("{r:?} is not quantized"))?;
        *histogram.entry(r.exact()).or_insert(0) += 1;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(60), "1000 pairs")?;
    Ok(format!("1000 pairs, {elapsed:.2?}, results {histogram:?}"))
}

fn basis_vector(bits: &[bool]) -> DenseState {
    let n = bits.len();
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
    amps[BasisBits::from_bools(bits).index()] = Complex64::new(1.0, 0.0);
    DenseState::from_amplitudes(n, amps).expect("small")
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    for _ in 0..500 {
        let n = rng.random_range(2..=8);
        let m = random_state(n, rng.random_range(0.5..3.0), &mut rng);
        let mut work = m.clone();
        let norm = basis_norm_circuit(&mut work);
        ensure(work.is_basis_form(), || format!("not in basis form:\n{work}"))?;
        ensure(norm.bits == work.signs(), || "bits disagree with signs".into())?;
        ensure(conforms_to_template(&norm.circuit), || {
            format!("off-template circuit\n{}", norm.circuit)
        })?;
        let bound = 2 * n * n + 3 * n;
        ensure(norm.circuit.len() <= bound, || {
            format!("{} gates for n = {n}, bound {bound}", norm.circuit.len())
        })?;
        if n <= 6 {
            let mut v = matrix_to_state(&m).map_err(|e| e.to_string())?;
            apply_circuit(&mut v, &norm.circuit, &mut rng).map_err(|e| e.to_string())?;
            let f = fidelity(&v, &basis_vector(&norm.bits)).map_err(|e| e.to_string())?;
            worst = worst.max((1.0 - f).abs());
            ensure((1.0 - f).abs() <= SYNTH_TOL, || format!("fidelity {f}"))?;
        }
    }
    Ok(format!("500 states, worst |1 - F| = {worst:.1e}"))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst = 1.0f64;
    for _ in 0..200 {
        let n = rng.random_range(2..=6);
        let m = random_state(n, rng.random_range(0.5..3.0), &mut rng);
        let norm = basis_norm_circuit(&mut m.clone());
        let inverse = reverse(&norm.circuit).map_err(|e| e.to_string())?;
        let mut v = basis_vector(&norm.bits);
        apply_circuit(&mut v, &inverse, &mut rng).map_err(|e| e.to_string())?;
        let f = fidelity(&v, &matrix_to_state(&m).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        worst = worst.min(f);
        ensure(f >= 1.0 - ROUND_TRIP_TOL, || format!("fidelity {f}"))?;

        let mut t = StabilizerMatrix::basis_state(&norm.bits).map_err(|e| e.to_string())?;
        apply_circuit(&mut t, &inverse, &mut rng).map_err(|e| e.to_string())?;
        ensure(
            inner_product(&t, &m).map_err(|e| e.to_string())?.s_exponent == Some(0),
            || "tableau round trip differs".into(),
        )?;
    }
    Ok(format!("200 cases, min fidelity {worst:.12}"))
}

fn random_pauli<R: Rng>(n: usize, rng: &mut R) -> PauliString {
    let lits: Vec<PauliLiteral> = (0..n)
        .map(|_| PauliLiteral::decode(rng.random_range(0..4)))
        .collect();
    PauliString::from_literals(&lits, rng.random_range(0..4))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut cases = 0;
    let mut rejected = 0;
    while cases < 200 {
        let n = rng.random_range(1..=5);
        let psi = if n == 1 {
            let mut m = StabilizerMatrix::zero_state(1).expect("n = 1");
            for _ in 0..rng.random_range(0..6) {
                let g = if rng.random_bool(0.5) { Gate::H(0) } else { Gate::P(0) };
                m.apply_gate(&g).map_err(|e| e.to_string())?;
            }
            m
        } else {
            random_state(n, rng.random_range(0.5..3.0), &mut rng)
        };
        let p = random_pauli(n, &mut rng);
        let Ok(out) = superpose(&psi, &p) else {
            rejected += 1;
            ensure(psi.rows().iter().all(|r| stabilizer_core::pauli::commutes(r, &p).unwrap()), || {
                format!("rejected an anticommuting {p}")
            })?;
            continue;
        };
        let v = matrix_to_state(&psi).map_err(|e| e.to_string())?;
        let pv = v.apply_pauli(&p).map_err(|e| e.to_string())?;
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let target: Vec<Complex64> = v.amplitudes().iter().zip(pv.amplitudes()).map(|(a, b)| (a + b) * s).collect();
        let w = matrix_to_state(&out).map_err(|e| e.to_string())?;
        let overlap: Complex64 = w.amplitudes().iter().zip(&target).map(|(a, b)| a.conj() * b).sum();
        let phase = overlap / overlap.norm();
        let err = w
            .amplitudes()
            .iter()
            .zip(&target)
            .map(|(a, b)| (b - phase * a).norm())
            .fold(0.0, f64::max);
        ensure(err <= SUPERPOSE_TOL, || format!("{p} on\n{psi}: error {err}"))?;
        cases += 1;
    }
    Ok(format!("200 cases ({rejected} commuting draws correctly rejected)"))
}

fn random_gate<R: Rng>(n: usize, rng: &mut R) -> Gate {
    let q = rng.random_range(0..n);
    let mut t = rng.random_range(0..n - 1);
    if t >= q {
        t += 1;
    }
    match rng.random_range(0..4) {
        0 => Gate::H(q),
        1 => Gate::P(q),
        2 => Gate::Cnot(q, t),
        _ => Gate::Cz(q, t),
    }
}

fn random_frame<R: Rng>(rng: &mut R) -> StabilizerFrame {
    let n = rng.random_range(2..=4);
    let k = rng.random_range(1..=4);
    let m = random_state(n, 2.0, rng);
    let mut seen = HashSet::new();
    let mut phases = Vec::new();
    while phases.len() < k {
        let p = PhaseVector((0..n).map(|_| rng.random_bool(0.5)).collect());
        if seen.insert(p.clone()) {
            phases.push(p);
        }
    }
    let amps: Vec<Complex64> = (0..k)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    let mut f = StabilizerFrame::new(m, phases, amps).expect("distinct phases");
    f.normalize();
    f
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = 1.0f64;
    let mut singles = 0;
    for _ in 0..100 {
        let mut f = random_frame(&mut rng);
        let n = f.n();
        if f.len() == 1 {
            // Exact reduction to the stabilizer inner product.
            let unit = StabilizerFrame::from_state(&f.term(0));
            let other = random_state(n, 2.0, &mut rng);
            let got = frame_inner_product(&unit, &StabilizerFrame::from_state(&other)).map_err(|e| e.to_string())?;
            let want = inner_product(&f.term(0), &other).map_err(|e| e.to_string())?.magnitude;
            ensure(got.to_bits() == want.to_bits(), || format!("k = 1: {got} vs {want}"))?;
            singles += 1;
        }
        let mut dense = f.reconstruct().map_err(|e| e.to_string())?;
        for _ in 0..30 {
            let g = random_gate(n, &mut rng);
            f.apply_gate(&g).map_err(|e| e.to_string())?;
            dense.apply(&g, &mut rng).map_err(|e| e.to_string())?;
        }
        let got = f.reconstruct().map_err(|e| e.to_string())?;
        let fid = fidelity(&got, &dense).map_err(|e| e.to_string())?;
        worst = worst.min(fid);
        ensure(fid >= 1.0 - FRAME_TOL, || format!("fidelity {fid} with {} terms", f.len()))?;
        // Phase-aligned, not merely overlapping.
        let ip = dense_inner_product(&dense, &got).map_err(|e| e.to_string())?;
        ensure((ip - Complex64::new(1.0, 0.0)).norm() <= FRAME_TOL, || format!("global phase {ip}"))?;
    }
    Ok(format!("100 frames ({singles} single-term), min fidelity {worst:.12}"))
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let ns: Vec<usize> = (20..=200).step_by(20).collect();
    let trials = 25;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut details = Vec::new();
    for beta in [0.6, 1.2] {
        let mut medians = Vec::new();
        let mut sizes = Vec::new();
        for &n in &ns {
            let mut times = Vec::with_capacity(trials);
            let mut gates = Vec::with_capacity(trials);
            for _ in 0..trials {
                let a = random_state(n, beta, &mut rng);
                let b = random_state(n, beta, &mut rng);
                let t0 = Instant::now();
                let r = inner_product(&a, &b).map_err(|e| e.to_string())?;
                times.push(t0.elapsed().as_secs_f64());
                std::hint::black_box(r);
                gates.push(basis_norm_circuit(&mut a.clone()).circuit.len() as f64);
            }
            ensure(gate_budget(n, beta) > 0, || "empty circuits".into())?;
            medians.push(median(&times));
            sizes.push(gates.iter().sum::<f64>() / gates.len() as f64);
        }
        let xs: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
        let slope = log_log_slope(&xs, &medians);
        let (c, r2) = quadratic_fit(&xs, &sizes);
        details.push(format!("β={beta}: slope {slope:.2}, size ≈ {c:.3}·n² (R² {r2:.3})"));
        ensure((SLOPE_RANGE.0..=SLOPE_RANGE.1).contains(&slope), || {
            format!("β={beta}: slope {slope:.3} outside {SLOPE_RANGE:?}; medians {medians:?}")
        })?;
        ensure(r2 >= MIN_R2, || format!("β={beta}: R² {r2:.4}; sizes {sizes:?}"))?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(300), "scaling sweep")?;
    Ok(format!("{}; {elapsed:.1?}", details.join("; ")))
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let trials = 10_000;
    let mut zeros = 0;
    for _ in 0..trials {
        let mut plus = StabilizerMatrix::zero_state(1).expect("n = 1");
        plus.apply_gate(&Gate::H(0)).map_err(|e| e.to_string())?;
        let out = plus.measure(0, &mut rng).map_err(|e| e.to_string())?;
        ensure(!out.deterministic, || "|+⟩ measured deterministically".into())?;
        if out.bit == 0 {
            zeros += 1;
        }

        let mut bell = matrix_from_strs(&["XX", "ZZ"]).expect("valid");
        let first = bell.measure(0, &mut rng).map_err(|e| e.to_string())?;
        let second = bell.measure(1, &mut rng).map_err(|e| e.to_string())?;
        ensure(!first.deterministic && second.deterministic && first.bit == second.bit, || {
            format!("Bell outcomes {first:?} then {second:?}")
        })?;
    }
    let freq = zeros as f64 / trials as f64;
    ensure((freq - 0.5).abs() <= FREQ_TOL, || format!("frequency of 0 is {freq}"))?;
    Ok(format!("{trials} trials, P(0) = {freq:.4}, Bell pairs always correlated"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("two-qubit table regression", criterion_1),
        ("state counts 6 / 60 / 1080", criterion_2),
        ("nearest-neighbor counts", criterion_3),
        ("inner product vs dense oracle", criterion_4),
        ("basis-normalization contract", criterion_5),
        ("inverse-circuit round trip", criterion_6),
        ("superposition construction", criterion_7),
        ("stabilizer frames", criterion_8),
        ("scaling shape", criterion_9),
        ("measurement statistics", criterion_10),
    ];
    let mut failures = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
                failures.push(i + 1);
            }
        }
    }
    if failures.is_empty() {
        println!("acceptance: all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failures:?}");
        ExitCode::FAILURE
    }
}
