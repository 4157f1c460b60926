//! Exact big-integer number theory primitives.
//!
//! Everything here is deterministic: primality uses trial division below a
//! small threshold and then Miller-Rabin with the witness set
//! {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}, which is known to be
//! complete for all inputs below 3.3 * 10^24 (in particular for every u64).
//! Mersenne numbers are certified with the Lucas-Lehmer test instead, which
//! is exact for every prime exponent. All equation-level arithmetic is done
//! on `BigUint`; fixed-width fast paths exist only where the input is proven
//! to fit (factorization is capped at 2^64, so its odd part fits u64).

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Witnesses making Miller-Rabin deterministic for all n < 3.3 * 10^24.
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Trial-division threshold used before Miller-Rabin.
const TRIAL_LIMIT: u64 = 1 << 10;

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let limit = TRIAL_LIMIT as usize;
        let mut sieve = vec![true; limit];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..limit {
            if sieve[i] {
                for j in (i * i..limit).step_by(i) {
                    sieve[j] = false;
                }
            }
        }
        (2..limit).filter(|&i| sieve[i]).map(|i| i as u64).collect()
    })
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality test for u64 inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in small_primes() {
        if p * p > n {
            break;
        }
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    if n < TRIAL_LIMIT * TRIAL_LIMIT {
        return true;
    }

    // Miller-Rabin, witness-complete for u64.
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    'witness: for &a in &MR_WITNESSES {
        if a % n == 0 {
            continue;
        }
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Exact primality test for the values this crate produces.
///
/// Inputs that fit u64 take the deterministic u64 path. Larger inputs run
/// trial division and Miller-Rabin with the fixed witness set, which has
/// error bound 0 below 3.3 * 10^24; every primality query the solver and
/// catalog generate is below the 2^64 factorization cap, so no query here
/// is ever probabilistic. Mersenne values themselves are certified through
/// [`lucas_lehmer`], not this test.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    for &p in small_primes() {
        if (n % BigUint::from(p)).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().expect("n > 1");
    let d = &n_minus_1 >> s;
    'witness: for &a in &MR_WITNESSES {
        let a = BigUint::from(a);
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigUint::from(2u32), n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Lucas-Lehmer test: 2^p - 1 is prime iff s_{p-2} == 0 where
/// s_0 = 4 and s_i = s_{i-1}^2 - 2 (mod 2^p - 1).
///
/// Rejects non-prime exponents and p < 3 (p = 2 is handled by a direct
/// check in [`MersennePrime::new`]).
pub fn lucas_lehmer(p: u32) -> Result<bool> {
    if !is_prime_u64(p as u64) {
        return Err(Error::ExponentNotPrime(p));
    }
    if p < 3 {
        return Err(Error::LucasLehmerDomain(p));
    }
    let m = mersenne_number(p);
    let two = BigUint::from(2u32);
    let mut s = BigUint::from(4u32);
    for _ in 0..p - 2 {
        // s^2 - 2 mod m, keeping the subtraction non-negative
        s = (&s * &s + &m - &two) % &m;
    }
    Ok(s.is_zero())
}

/// 2^p - 1 as a big integer.
pub fn mersenne_number(p: u32) -> BigUint {
    (BigUint::one() << p) - BigUint::one()
}

/// Floor of the square root together with an exactness flag.
///
/// Returns `(s, exact)` with `s = floor(sqrt(n))` and `exact` iff `s^2 = n`.
/// Negative inputs are unrepresentable in `BigUint`, so the domain is total.
pub fn integer_sqrt(n: &BigUint) -> (BigUint, bool) {
    let s = n.sqrt();
    let exact = &(&s * &s) == n;
    (s, exact)
}

/// Residue of m modulo 4.
pub fn mod4_residue(m: &BigUint) -> u8 {
    (m % BigUint::from(4u32)).to_u8().expect("residue < 4")
}

/// Default factorization effort cap: inputs up to 2^64.
pub fn default_factor_cap() -> BigUint {
    BigUint::one() << 64
}

/// A complete prime factorization, primes ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    n: BigUint,
    factors: Vec<(BigUint, u32)>,
}

impl Factorization {
    pub fn n(&self) -> &BigUint {
        &self.n
    }

    /// (prime, multiplicity) pairs in ascending prime order.
    pub fn factors(&self) -> &[(BigUint, u32)] {
        &self.factors
    }

    /// Distinct primes in ascending order.
    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.iter().map(|(p, _)| p)
    }

    /// Reassembles the product of prime^multiplicity.
    pub fn product(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, (p, k)| acc * p.pow(*k))
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (p, k) in &self.factors {
            if !first {
                write!(f, " * ")?;
            }
            first = false;
            if *k == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{k}")?;
            }
        }
        Ok(())
    }
}

/// Complete prime factorization under the default 2^64 effort cap.
pub fn factor(n: &BigUint) -> Result<Factorization> {
    factor_with_cap(n, &default_factor_cap())
}

/// Complete prime factorization of n <= cap.
///
/// Trial division by the small-prime table, then Brent's variant of
/// Pollard's rho on the remaining u64 cofactor. Caps above 2^64 are
/// clamped: the rho machinery is fixed-width.
pub fn factor_with_cap(n: &BigUint, cap: &BigUint) -> Result<Factorization> {
    if n < &BigUint::from(2u32) {
        return Err(Error::FactorDomain(n.clone()));
    }
    let cap = cap.min(&default_factor_cap()).clone();
    if n > &cap {
        return Err(Error::CapExceeded { n: n.clone(), cap });
    }

    let mut counts: Vec<(u64, u32)> = Vec::new();
    let mut rest = n.clone();

    // Strip twos first; the odd part of any n <= 2^64 fits u64.
    let twos = rest.trailing_zeros().unwrap_or(0) as u32;
    if twos > 0 {
        counts.push((2, twos));
        rest >>= twos;
    }
    let mut rest = rest.to_u64().expect("odd part of n <= 2^64 fits u64");

    for &p in small_primes() {
        if p * p > rest {
            break;
        }
        let mut k = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            k += 1;
        }
        if k > 0 {
            counts.push((p, k));
        }
    }
    if rest > 1 {
        let mut found = Vec::new();
        split_u64(rest, &mut found);
        found.sort_unstable();
        let mut it = found.into_iter();
        if let Some(first) = it.next() {
            let mut cur = first;
            let mut k = 1;
            for p in it {
                if p == cur {
                    k += 1;
                } else {
                    counts.push((cur, k));
                    cur = p;
                    k = 1;
                }
            }
            counts.push((cur, k));
        }
    }

    counts.sort_unstable_by_key(|&(p, _)| p);
    let factorization = Factorization {
        n: n.clone(),
        factors: counts
            .into_iter()
            .map(|(p, k)| (BigUint::from(p), k))
            .collect(),
    };
    debug_assert_eq!(&factorization.product(), n);
    Ok(factorization)
}

/// Collects the prime factors (with repetition) of an odd n free of
/// small-prime divisors.
fn split_u64(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        out.push(n);
        return;
    }
    let d = pollard_brent(n);
    split_u64(d, out);
    split_u64(n / d, out);
}

/// Brent's cycle-finding variant of Pollard's rho. Deterministic: sweeps
/// the polynomial offset c = 1, 2, ... until a split is found. The input
/// is composite, odd, and free of factors below the trial threshold.
fn pollard_brent(n: u64) -> u64 {
    debug_assert!(n % 2 == 1 && !is_prime_u64(n));
    for c in 1.. {
        if let Some(d) = brent_attempt(n, c) {
            return d;
        }
    }
    unreachable!("composite n always splits for some offset c")
}

fn brent_attempt(n: u64, c: u64) -> Option<u64> {
    let step = |x: u64| {
        let y = mul_mod(x, x, n);
        let s = y + c;
        if s >= n { s - n } else { s }
    };
    let mut y = 2u64;
    let mut r = 1u64;
    let mut q = 1u64;
    let (mut x, mut ys) = (0u64, 0u64);
    let mut g = 1u64;
    const BATCH: u64 = 128;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = step(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..BATCH.min(r - k) {
                y = step(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = gcd_u64(q, n);
            k += BATCH;
        }
        r <<= 1;
    }
    if g == n {
        // Batch overshot; replay one step at a time.
        loop {
            ys = step(ys);
            g = gcd_u64(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    if g == n { None } else { Some(g) }
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A certified Mersenne prime 2^p - 1.
///
/// Construction validates every invariant: p prime, the value exactly
/// 2^p - 1, the value itself prime (Lucas-Lehmer for p >= 3, directly for
/// p = 2, whose M_2 = 3 the l = 2 classification relies on), and the value
/// congruent to 3 mod 4.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MersennePrime {
    p: u32,
    value: BigUint,
}

impl MersennePrime {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime_u64(p as u64) {
            return Err(Error::ExponentNotPrime(p));
        }
        let value = mersenne_number(p);
        let prime = if p == 2 {
            true // M_2 = 3
        } else {
            lucas_lehmer(p)?
        };
        if !prime {
            return Err(Error::NotMersennePrime { p, value });
        }
        debug_assert_eq!(mod4_residue(&value), 3);
        Ok(Self { p, value })
    }

    /// Back-solves a Mersenne value to its exponent and validates it.
    pub fn from_value(value: &BigUint) -> Result<Self> {
        if value < &BigUint::from(3u32) {
            return Err(Error::NotMersenneValue(value.clone()));
        }
        let succ = value + BigUint::one();
        if succ.count_ones() != 1 {
            return Err(Error::NotMersenneValue(value.clone()));
        }
        let p = succ.trailing_zeros().expect("succ >= 4") as u32;
        if !is_prime_u64(p as u64) {
            return Err(Error::NotMersenneValue(value.clone()));
        }
        Self::new(p)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }
}

impl fmt::Display for MersennePrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn is_prime_examples() {
        assert!(is_prime(&big(2)));
        assert!(!is_prime(&big(1)));
        assert!(!is_prime(&big(0)));
        assert!(is_prime(&big(8191)));
        assert!(!is_prime(&big(2047))); // 23 * 89
        assert!(!is_prime(&big(561))); // Carmichael
    }

    #[test]
    fn lucas_lehmer_examples() {
        assert_eq!(lucas_lehmer(3), Ok(true));
        assert_eq!(lucas_lehmer(11), Ok(false)); // 2047 = 23 * 89
        assert_eq!(lucas_lehmer(13), Ok(true)); // 8191
        assert_eq!(lucas_lehmer(2), Err(Error::LucasLehmerDomain(2)));
        assert_eq!(lucas_lehmer(4), Err(Error::ExponentNotPrime(4)));
    }

    /// Independent oracle: trial-divide 2^p - 1 directly.
    fn trial_division_prime(n: &BigUint) -> bool {
        if n < &big(2) {
            return false;
        }
        let mut d = big(2);
        while &(&d * &d) <= n {
            if (n % &d).is_zero() {
                return false;
            }
            d += BigUint::one();
        }
        true
    }

    #[test]
    fn lucas_lehmer_matches_trial_division_up_to_31() {
        for p in [3u32, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            let expected = trial_division_prime(&mersenne_number(p));
            assert_eq!(lucas_lehmer(p), Ok(expected), "p = {p}");
        }
    }

    #[test]
    fn integer_sqrt_examples() {
        assert_eq!(integer_sqrt(&big(0)), (big(0), true));
        assert_eq!(integer_sqrt(&big(2)), (big(1), false));
        // 8193^2, the Example-1 right-hand side (3 * 2731)^2 = 8191^2 + 8^5
        assert_eq!(integer_sqrt(&big(67_125_249)), (big(8193), true));
    }

    #[test]
    fn factor_examples() {
        let f = factor(&big(33)).unwrap();
        assert_eq!(f.factors(), &[(big(3), 1), (big(11), 1)]);
        let f = factor(&big(129)).unwrap();
        assert_eq!(f.factors(), &[(big(3), 1), (big(43), 1)]);
        let f = factor(&big(8)).unwrap();
        assert_eq!(f.factors(), &[(big(2), 3)]);
    }

    #[test]
    fn factor_rejects_bad_domain() {
        assert_eq!(factor(&big(1)), Err(Error::FactorDomain(big(1))));
        let too_big = (BigUint::one() << 64) + BigUint::one();
        assert!(matches!(
            factor(&too_big),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn factor_two_pow_p_plus_one_up_to_61() {
        for p in [2u32, 3, 5, 7, 13, 17, 19, 31, 61] {
            let n = (BigUint::one() << p) + BigUint::one();
            let f = factor(&n).unwrap();
            assert_eq!(f.product(), n, "p = {p}");
            for (prime, _) in f.factors() {
                assert!(is_prime(prime), "listed factor {prime} of 2^{p}+1");
            }
        }
    }

    #[test]
    fn mod4_examples() {
        assert_eq!(mod4_residue(&big(7)), 3);
        assert_eq!(mod4_residue(&big(8)), 0);
        assert_eq!(mod4_residue(&big(1)), 1);
    }

    #[test]
    fn mersenne_primes_are_3_mod_4() {
        for p in [2u32, 3, 5, 7, 13, 17, 19, 31] {
            let m = MersennePrime::new(p).unwrap();
            assert_eq!(mod4_residue(m.value()), 3, "p = {p}");
        }
    }

    #[test]
    fn mersenne_rejects_bad_exponents() {
        assert_eq!(MersennePrime::new(4), Err(Error::ExponentNotPrime(4)));
        assert!(matches!(
            MersennePrime::new(11),
            Err(Error::NotMersennePrime { p: 11, .. })
        ));
    }

    #[test]
    fn mersenne_from_value() {
        let m = MersennePrime::from_value(&big(8191)).unwrap();
        assert_eq!(m.p(), 13);
        assert!(MersennePrime::from_value(&big(2047)).is_err()); // p prime, value not
        assert!(MersennePrime::from_value(&big(15)).is_err()); // p = 4 not prime
        assert!(MersennePrime::from_value(&big(6)).is_err()); // not 2^p - 1
    }

    proptest! {
        #[test]
        fn isqrt_brackets_input(n in 0u64..u64::MAX) {
            let n = big(n);
            let (s, exact) = integer_sqrt(&n);
            prop_assert!(&s * &s <= n);
            prop_assert!((&s + BigUint::one()) * (&s + BigUint::one()) > n);
            prop_assert_eq!(exact, &s * &s == n);
        }

        #[test]
        fn factor_reassembles(n in 2u64..1_000_000_000u64) {
            let n = big(n);
            let f = factor(&n).unwrap();
            prop_assert_eq!(f.product(), n);
            for (p, _) in f.factors() {
                prop_assert!(is_prime(p));
            }
        }

        #[test]
        fn u64_primality_matches_trial_division(n in 0u64..200_000u64) {
            prop_assert_eq!(is_prime_u64(n), trial_division_prime(&big(n)));
        }
    }
}
