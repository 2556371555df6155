//! Small-integer number theory: primality, prime powers, primitive roots.

use num_integer::Integer;

/// Deterministic primality test. Trial division below 2^31, Miller-Rabin
/// with the first twelve prime bases above (deterministic for all `u64`).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    if n < 1 << 31 {
        let mut d = 41;
        while d * d <= n {
            if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
                return false;
            }
            d += 6;
        }
        return true;
    }
    let (mut d, mut r) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
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

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Writes `q = p^e` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let factors = prime_factors(q);
    if factors.len() != 1 {
        return None;
    }
    let p = factors[0];
    let (mut rest, mut e) = (q, 0);
    while rest > 1 {
        rest /= p;
        e += 1;
    }
    Some((p, e))
}

/// Multiplicative order of `a` modulo `m`; `None` unless `gcd(a, m) = 1`.
pub fn multiplicative_order(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(1);
    }
    if a.gcd(&m) != 1 {
        return None;
    }
    let (mut x, mut ord) = (a % m, 1);
    while x != 1 {
        x = mul_mod(x, a, m);
        ord += 1;
    }
    Some(ord)
}

/// Smallest primitive root modulo a prime `l`.
pub fn smallest_primitive_root(l: u64) -> Option<u64> {
    if !is_prime(l) {
        return None;
    }
    if l == 2 {
        return Some(1);
    }
    let factors = prime_factors(l - 1);
    (2..l).find(|&g| factors.iter().all(|&f| pow_mod(g, (l - 1) / f, l) != 1))
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime_after(n: u64) -> u64 {
    let mut c = n + 1;
    while !is_prime(c) {
        c += 1;
    }
    c
}

/// The first `count` primes congruent to `residue` modulo `modulus`.
pub fn primes_in_class(residue: u64, modulus: u64, count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut c = residue % modulus;
    while out.len() < count {
        if is_prime(c) {
            out.push(c);
        }
        c += modulus;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_matches_sieve() {
        let limit = 20_000;
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
        for (i, &s) in sieve.iter().enumerate() {
            assert_eq!(is_prime(i as u64), s, "{i}");
        }
        assert!(is_prime(2_147_483_647));
        assert!(is_prime(4_294_967_311));
        assert!(!is_prime(4_294_967_297)); // 641 * 6700417
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(smallest_primitive_root(5), Some(2));
        assert_eq!(smallest_primitive_root(7), Some(3));
        assert_eq!(smallest_primitive_root(11), Some(2));
        assert_eq!(smallest_primitive_root(23), Some(5));
        assert_eq!(smallest_primitive_root(12), None);
    }

    #[test]
    fn class_primes() {
        assert_eq!(primes_in_class(2, 5, 5), vec![2, 7, 17, 37, 47]);
        assert_eq!(multiplicative_order(3, 7), Some(6));
    }
}
