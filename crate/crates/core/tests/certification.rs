use hyperappell::appell::{build_family, restrict_real, shifted_coeffs};
use hyperappell::verify::{check_intertwining, check_real_ladder, verify_sequence};
use hyperappell::{Family, Rational};

fn families() -> Vec<Family> {
    vec![
        Family::Canonical,
        Family::Bernoulli,
        Family::Euler,
        Family::Hermite,
        Family::FrobeniusEuler(Rational::new(3, 1).unwrap()),
        Family::FrobeniusEuler(Rational::new(-1, 2).unwrap()),
    ]
}

#[test]
fn every_family_is_certified() {
    for n in 1..=4 {
        for fam in families() {
            let seq = build_family(n, 8, &fam, Rational::new(2, 3).unwrap(), 0).unwrap();
            let report = verify_sequence(&seq);
            assert!(report.all_passed(), "{fam} n={n}: {:?}", report.first_failure());
            assert!(check_real_ladder(&restrict_real(&seq)), "{fam} n={n}");
        }
    }
}

#[test]
fn shifted_sequences_intertwine() {
    for n in 1..=8 {
        for s in 0..=4 {
            assert!(check_intertwining(&shifted_coeffs(n, s, 10, Rational::one()).unwrap()), "n={n} s={s}");
        }
    }
}

#[test]
fn transfer_preserves_leading_term() {
    for fam in families() {
        let seq = build_family(3, 6, &fam, Rational::one(), 0).unwrap();
        let canonical = build_family(3, 6, &Family::Canonical, Rational::one(), 0).unwrap();
        for (p, q) in seq.polys().iter().zip(canonical.polys()) {
            let top: Vec<_> = p.terms().filter(|(i, j, _)| (i + j) as usize == p.degree()).collect();
            let expected: Vec<_> = q.terms().collect();
            assert_eq!(top, expected, "{fam} k={}", p.degree());
        }
    }
}
