//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Every check is exact; the only thresholds are the wall-clock budgets.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use hyperappell::appell::{
    build_family, build_phi, canonical_coeffs, closed_form_coeff, restrict_real, shifted_coeffs,
    UniPoly,
};
use hyperappell::clifford::{blade_product, vector_power};
use hyperappell::matrix::{
    creation_matrix, derivation_matrix_tilde, nilpotent_exp, pascal_matrix,
};
use hyperappell::num::{binomial, factorial};
use hyperappell::verify::{check_intertwining, check_monogenic, check_xi_derivation, verify_sequence};
use hyperappell::{Blade, CliffordPoly, Family, Multivector, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const CERTIFY_BUDGET: Duration = Duration::from_secs(10);
const FAST_BUDGET: Duration = Duration::from_secs(1);

fn r(p: i64, q: i64) -> Rational {
    Rational::new(p, q).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, budget: Duration) -> Result<(), String> {
    ensure(elapsed < budget, || format!("took {elapsed:.2?}, budget {budget:?}"))
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    r(rng.gen_range(-50..=50), rng.gen_range(1..=20))
}

/// Monogenicity and the Appell ladder for the canonical family.
fn theorem_certification() -> Outcome {
    let start = Instant::now();
    for n in 1..=5 {
        let seq = build_family(n, 10, &Family::Canonical, Rational::one(), 0).map_err(|e| e.to_string())?;
        let report = verify_sequence(&seq);
        ensure(report.results.len() == 11, || format!("n={n}: missing degrees"))?;
        if let Some(bad) = report.first_failure() {
            return Err(format!("n={n} k={}: {:?}", bad.k, bad.witness));
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, CERTIFY_BUDGET)?;
    Ok(format!("n=1..5, m=10 in {elapsed:.2?}"))
}

fn intertwining_identity() -> Outcome {
    let start = Instant::now();
    let mut cases = 0;
    for n in 1..=6 {
        for s in 0..=3 {
            for m in 0..=12 {
                let c = shifted_coeffs(n, s, m, Rational::one()).map_err(|e| e.to_string())?;
                ensure(check_intertwining(&c), || format!("n={n} s={s} m={m}"))?;
                cases += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, FAST_BUDGET)?;
    Ok(format!("{cases} cases in {elapsed:.2?}"))
}

fn xi_derivation() -> Outcome {
    for n in 1..=4 {
        for m in 0..=8 {
            ensure(check_xi_derivation(n, m).unwrap_or(false), || format!("n={n} m={m}"))?;
        }
    }
    for m in 0..=12 {
        let h = creation_matrix(m);
        let ht = derivation_matrix_tilde(1, m).map_err(|e| e.to_string())?;
        ensure(ht.add(&h).unwrap().is_zero(), || format!("H~ != -H at n=1, m={m}"))?;
    }
    Ok("n<=4, m<=8; H~ = -H at n=1".into())
}

fn pascal_laws() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let pairs: Vec<(Rational, Rational)> =
        (0..100).map(|_| (random_rational(&mut rng), random_rational(&mut rng))).collect();
    let start = Instant::now();
    let m = 10;
    let h = creation_matrix(m);
    for (a, b) in &pairs {
        let pa = pascal_matrix(a, m);
        ensure(nilpotent_exp(&h, a).unwrap() == pa, || format!("exp(H·{a}) != P({a})"))?;
        let prod = pa.mul(&pascal_matrix(b, m)).unwrap();
        ensure(prod == pascal_matrix(&(a + b), m), || format!("P({a})P({b}) != P({a}+{b})"))?;
    }
    let elapsed = start.elapsed();
    within(elapsed, FAST_BUDGET)?;
    Ok(format!("100 pairs, m=10 in {elapsed:.2?}"))
}

/// Bernoulli numbers from `Σ_{j<=k} C(k+1, j) B_j = 0`, then `B_k(x) = Σ C(k,j) B_j x^{k-j}`.
fn bernoulli_oracle(m: usize) -> Vec<UniPoly> {
    let mut b: Vec<Rational> = vec![Rational::one()];
    for k in 1..=m as u32 {
        let s: Rational = (0..k).map(|j| Rational::from(binomial(k + 1, j)) * &b[j as usize]).sum();
        b.push(-s / Rational::from((k + 1) as i64));
    }
    (0..=m as u32)
        .map(|k| {
            let mut c = vec![Rational::zero(); k as usize + 1];
            for j in 0..=k {
                c[(k - j) as usize] = Rational::from(binomial(k, j)) * &b[j as usize];
            }
            UniPoly::new(c)
        })
        .collect()
}

/// Euler polynomials from `E_k(x+1) + E_k(x) = 2x^k`, i.e. `E_k = x^k - ½ Σ_{j<k} C(k,j) E_j`.
fn euler_oracle(m: usize) -> Vec<UniPoly> {
    let mut out: Vec<Vec<Rational>> = Vec::new();
    for k in 0..=m {
        let mut c = vec![Rational::zero(); k + 1];
        c[k] = Rational::one();
        for (j, e) in out.iter().enumerate() {
            let w = Rational::from(binomial(k as u32, j as u32)) * r(-1, 2);
            for (t, v) in e.iter().enumerate() {
                c[t] += &w * v;
            }
        }
        out.push(c);
    }
    out.into_iter().map(UniPoly::new).collect()
}

/// Monic Hermite from the series of `exp(-t^2/4) e^{tx}`:
/// `p_k = Σ_r k! / (r! (k-2r)!) (-1/4)^r x^{k-2r}`.
fn hermite_oracle(m: usize) -> Vec<UniPoly> {
    (0..=m as u32)
        .map(|k| {
            let mut c = vec![Rational::zero(); k as usize + 1];
            for t in 0..=k / 2 {
                let w = Rational::from(factorial(k)) / Rational::from(factorial(t) * factorial(k - 2 * t));
                c[(k - 2 * t) as usize] = w * r(-1, 4).pow(t);
            }
            UniPoly::new(c)
        })
        .collect()
}

fn classical_reduction() -> Outcome {
    let m = 8;
    let oracles = [
        (Family::Bernoulli, bernoulli_oracle(m)),
        (Family::Euler, euler_oracle(m)),
        (Family::Hermite, hermite_oracle(m)),
    ];
    // Spot values: B_2 = x^2 - x + 1/6, E_2 = x^2 - x, He_2 = x^2 - 1/2.
    ensure(oracles[0].1[2] == UniPoly::new(vec![r(1, 6), r(-1, 1), r(1, 1)]), || "B_2 oracle".into())?;
    ensure(oracles[1].1[2] == UniPoly::new(vec![r(0, 1), r(-1, 1), r(1, 1)]), || "E_2 oracle".into())?;
    ensure(oracles[2].1[2] == UniPoly::new(vec![r(-1, 2), r(0, 1), r(1, 1)]), || "H_2 oracle".into())?;
    for n in 1..=5 {
        for (fam, expected) in &oracles {
            let seq = build_family(n, m, fam, Rational::one(), 0).map_err(|e| e.to_string())?;
            let got = restrict_real(&seq);
            ensure(&got == expected, || format!("{fam} n={n}: {got:?}"))?;
        }
    }
    Ok("bernoulli, euler, hermite at m=8 for n=1..5".into())
}

fn complex_reduction() -> Outcome {
    let seq = build_family(1, 10, &Family::Canonical, Rational::one(), 0).map_err(|e| e.to_string())?;
    let w = CliffordPoly::paravector_variable(1);
    for (k, p) in seq.expand().iter().enumerate() {
        ensure(*p == w.pow(k as u32), || format!("k={k}: {p} != (x0 + e1 x1)^{k}"))?;
    }
    Ok("phi_k = (x0 + e1 x1)^k for k<=10".into())
}

fn low_degree_values() -> Outcome {
    for n in 1..=6usize {
        let seq = build_family(n, 1, &Family::Canonical, Rational::one(), 0).map_err(|e| e.to_string())?;
        let expected = CliffordPoly::variable(n, 0)
            .unwrap()
            .add(&CliffordPoly::vector_variable(n).scale(&r(1, n as i64)));
        ensure(seq.expand()[1] == expected, || format!("phi_1 wrong at n={n}"))?;
    }
    // Frozen from the recurrence c_{2k-1} = (2k-1)/(n+2k-2) c_{2k-2}, c_{2k} = c_{2k-1} at n = 2.
    let frozen = [r(1, 1), r(1, 2), r(1, 2), r(3, 8), r(3, 8), r(5, 16), r(5, 16), r(35, 128), r(35, 128)];
    let c = canonical_coeffs(2, 8, Rational::one()).map_err(|e| e.to_string())?;
    ensure(c.coeffs() == frozen, || format!("n=2 table {:?}", c.coeffs()))?;
    for (j, v) in frozen.iter().enumerate() {
        ensure(&closed_form_coeff(2, 0, j, &Rational::one()).unwrap() == v, || format!("closed form j={j}"))?;
    }
    Ok("phi_1 for n<=6; n=2 table through m=8".into())
}

fn negative_controls() -> Outcome {
    let m = 8;
    let mut cases = 0;
    for n in 1..=5 {
        let c = canonical_coeffs(n, m, Rational::one()).map_err(|e| e.to_string())?;
        for k in 1..=m {
            let bad = c.with_coefficient(k, c.get(k) + Rational::one()).map_err(|e| e.to_string())?;
            let seq = build_phi(&bad, m).map_err(|e| e.to_string())?;
            let results = check_monogenic(&seq);
            let first = results.iter().find(|r| !r.passed);
            match first {
                Some(f) if f.k <= k + 1 && f.witness.is_some() => cases += 1,
                Some(f) => return Err(format!("n={n} k={k}: first failure at {} without witness or too late", f.k)),
                None => return Err(format!("n={n} k={k}: perturbation undetected")),
            }
        }
    }
    Ok(format!("{cases} perturbations detected with witnesses"))
}

fn clifford_oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for n in 1..=4 {
        for _ in 0..25 {
            let vec: Vec<Rational> = (0..n).map(|_| random_rational(&mut rng)).collect();
            let v = Multivector::vector(&vec);
            let mut acc = Multivector::one(n);
            for j in 0..=8 {
                ensure(vector_power(&vec, j) == acc, || format!("n={n} j={j}"))?;
                acc = &acc * &v;
            }
        }
    }
    for n in 0..=3usize {
        let blades: Vec<Blade> = (0..1u32 << n).map(Blade::from_mask).collect();
        for &a in &blades {
            for &b in &blades {
                for &c in &blades {
                    let (s1, ab) = blade_product(a, b, n).unwrap();
                    let (s2, abc) = blade_product(ab, c, n).unwrap();
                    let (s3, bc) = blade_product(b, c, n).unwrap();
                    let (s4, abc2) = blade_product(a, bc, n).unwrap();
                    ensure(s1 * s2 == s3 * s4 && abc == abc2, || format!("({a}{b}){c} n={n}"))?;
                }
            }
        }
    }
    Ok("vector powers j<=8, n<=4; associativity n<=3".into())
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

const GOLDEN: &[(&str, &[&str])] = &[
    ("gen_canonical_n2_m4.json", &["gen", "--n", "2", "--m", "4", "--family", "canonical"]),
    ("gen_bernoulli_n3_m3.csv", &["gen", "--n", "3", "--m", "3", "--family", "bernoulli", "--format", "csv"]),
    ("matrices_euler_n2_m3.json", &["matrices", "--n", "2", "--m", "3", "--tilde", "--family", "euler"]),
    ("verify_hermite_n3_m6.json", &["verify", "--n", "3", "--m", "6", "--family", "hermite"]),
];

fn cli_determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_hyperappell");
    let mut runs = 0;
    for (file, args) in GOLDEN {
        let golden = std::fs::read(golden_dir().join(file)).map_err(|e| format!("{file}: {e}"))?;
        for threads in ["1", "4"] {
            for _ in 0..3 {
                let out = Command::new(bin)
                    .args(*args)
                    .env("HYPERAPPELL_THREADS", threads)
                    .output()
                    .map_err(|e| e.to_string())?;
                ensure(out.status.success(), || format!("{file}: exit {:?}", out.status.code()))?;
                ensure(out.stdout == golden, || format!("{file}: output differs with {threads} threads"))?;
                runs += 1;
            }
        }
    }
    Ok(format!("{runs} runs byte-identical to golden files"))
}

fn main() {
    let criteria: &[Criterion] = &[
        ("AC1 monogenic + Appell certification, canonical, n<=5, m=10", theorem_certification),
        ("AC2 intertwining H D + D H~(s) = O", intertwining_identity),
        ("AC3 xi derivation and H~ = -H at n=1", xi_derivation),
        ("AC4 Pascal laws", pascal_laws),
        ("AC5 classical real reduction", classical_reduction),
        ("AC6 complex-case reduction", complex_reduction),
        ("AC7 known low-degree values", low_degree_values),
        ("AC8 negative controls", negative_controls),
        ("AC9 Clifford core oracles", clifford_oracles),
        ("AC10 CLI determinism", cli_determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
