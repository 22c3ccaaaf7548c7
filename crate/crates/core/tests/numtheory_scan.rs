use hallrad::numtheory::{classify_consecutive, in_pi0, is_prime, matching_cases, Outcome};

/// `(p, k)` with `n = p^k`, by trial division.
fn trial_prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut d = 2;
    while d * d <= n && !n.is_multiple_of(d) {
        d += 1;
    }
    let p = if n.is_multiple_of(d) { d } else { n };
    let (mut m, mut k) = (n, 0);
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

#[test]
fn consecutive_prime_powers_up_to_a_million() {
    let mut mersenne = Vec::new();
    let mut fermat = Vec::new();
    let mut eight_nine = Vec::new();
    let mut prev = trial_prime_power(2);
    for q in 2..=1_000_000u64 {
        let next = trial_prime_power(q + 1);
        let t = classify_consecutive(q).unwrap();
        match (prev, next) {
            (Some(a), Some(b)) => {
                assert_eq!((t.lower, t.upper), (prev, next), "q = {q}");
                assert_eq!(matching_cases(a, b).len(), 1, "q = {q}");
                match t.outcome {
                    Outcome::MersennePair => mersenne.push(q),
                    Outcome::FermatPair { .. } => fermat.push(q),
                    Outcome::EightNine => eight_nine.push(q),
                    other => panic!("q = {q}: {other:?}"),
                }
            }
            _ => assert_eq!(t.outcome, Outcome::NotApplicable, "q = {q}"),
        }
        prev = next;
    }
    assert_eq!(eight_nine, vec![8]);
    assert_eq!(fermat, vec![2, 4, 16, 256, 65536]);
    assert_eq!(&mersenne[..5], &[3, 7, 31, 127, 8191]);
    assert!(mersenne.iter().all(|&q| is_prime(q) && (q + 1).is_power_of_two()));
}

#[test]
fn pi0_membership() {
    let pi0: Vec<u64> = (2..70_000).filter(|&p| is_prime(p) && in_pi0(p).unwrap()).collect();
    assert_eq!(pi0, vec![2, 3, 5, 7, 13, 17, 257, 65537]);
    assert!(in_pi0(4).is_err());
}
