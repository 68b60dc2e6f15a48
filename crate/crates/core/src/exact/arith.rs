//! Euler's totient and its summatory function `Σ(x) = Σ_{l ≤ x} φ(l)`.

/// Euler's totient `φ(l)` by trial division.
pub fn totient(l: u64) -> u64 {
    assert!(l >= 1, "totient of zero");
    let mut n = l;
    let mut result = l;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// `φ(0..=n)` by a linear-time sieve; index 0 holds 0.
pub fn totients_up_to(n: usize) -> Vec<u64> {
    let mut phi: Vec<u64> = (0..=n as u64).collect();
    for p in 2..=n {
        if phi[p] == p as u64 {
            for k in (p..=n).step_by(p) {
                phi[k] -= phi[k] / p as u64;
            }
        }
    }
    phi
}

/// `Σ(x) = Σ_{l ≤ ⌊x⌋} φ(l)`.
pub fn mertens_sigma(x: f64) -> u64 {
    if x < 1.0 {
        return 0;
    }
    let n = x.floor() as usize;
    totients_up_to(n).iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totient_values() {
        assert_eq!(totient(1), 1);
        assert_eq!(totient(6), 2);
        assert_eq!(totient(97), 96);
        assert_eq!(totient(360), 96);
    }

    #[test]
    fn sieve_matches_trial_division() {
        let phi = totients_up_to(500);
        for l in 1..=500u64 {
            assert_eq!(phi[l as usize], totient(l));
        }
    }

    #[test]
    fn sigma_small() {
        assert_eq!(mertens_sigma(0.5), 0);
        assert_eq!(mertens_sigma(1.0), 1);
        // 1+1+2+2+4+2+6+4+6+4
        assert_eq!(mertens_sigma(10.0), 32);
        assert_eq!(mertens_sigma(10.9), 32);
    }

    #[test]
    fn sigma_tracks_three_over_pi_squared() {
        let c = 3.0 / std::f64::consts::PI.powi(2);
        for x in [1e3, 1e4, 1e5] {
            let r = mertens_sigma(x) as f64 / (x * x);
            let slack = 5.0 * x.ln() / x;
            assert!((r - c).abs() <= slack, "x = {x}: {r} vs {c}");
        }
    }
}
