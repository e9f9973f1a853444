//! Elementary integer number theory backing the counting formulas.
//!
//! Everything here runs on parameters the size of polynomial degrees, so
//! trial division is the right tool throughout.

/// Greatest common divisor.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Prime factorization by trial division, returned as (prime, exponent)
/// pairs in ascending prime order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factorize requires n >= 1");
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Primality by trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Möbius function: 0 if n has a squared prime factor, otherwise
/// (-1)^(number of prime factors).
pub fn moebius(n: u64) -> i64 {
    assert!(n >= 1, "moebius requires n >= 1");
    let factors = factorize(n);
    if factors.iter().any(|&(_, e)| e > 1) {
        return 0;
    }
    if factors.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Euler totient: the number of integers in [1, n] coprime to n.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi requires n >= 1");
    let mut phi = n;
    for (prime, _) in factorize(n) {
        phi = phi / prime * (prime - 1);
    }
    phi
}

/// Ascending divisors d of n with gcd(d, c) = 1.
pub fn divisors_coprime_to(n: u64, c: u64) -> Vec<u64> {
    assert!(n >= 1 && c >= 1, "divisors_coprime_to requires n, c >= 1");
    let mut out: Vec<u64> = (1..=n)
        .filter(|d| n % d == 0 && gcd(*d, c) == 1)
        .collect();
    out.sort_unstable();
    out
}

/// All divisors of n, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    divisors_coprime_to(n, 1)
}
