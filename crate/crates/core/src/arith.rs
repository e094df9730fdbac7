//! Small machine-integer number theory used to set up fields and moduli.

use num_integer::Integer;

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

/// Prime factorization as (prime, exponent) pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn mobius(n: u64) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut acc: u128 = 1 % m128;
    let mut b = (base % m) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

pub fn mod_mul(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Reduce a signed residue into `0..m`.
pub fn residue(a: i64, m: u64) -> u64 {
    a.rem_euclid(m as i64) as u64
}

/// Multiplicative order of `a` modulo `m`; `a` must be a unit.
pub fn mult_order(a: u64, m: u64) -> u64 {
    let n = euler_phi(m);
    divisors(n)
        .into_iter()
        .find(|&d| mod_pow(a, d, m) == 1 % m)
        .unwrap_or(n)
}

/// Smallest generator of the cyclic group `(Z/m)*`, for `m` a prime or an odd
/// prime power.
pub fn primitive_root(m: u64) -> Option<u64> {
    let n = euler_phi(m);
    (1..m).find(|&g| gcd(g, m) == 1 && mult_order(g, m) == n)
}

/// Units modulo `m` in increasing order.
pub fn units(m: u64) -> Vec<u64> {
    (1..m.max(2)).filter(|&a| gcd(a, m) == 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_and_mobius() {
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(49), 42);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(12), 0);
        assert_eq!(mobius(1), 1);
    }

    #[test]
    fn roots_and_orders() {
        assert_eq!(primitive_root(7), Some(3));
        assert_eq!(primitive_root(25), Some(2));
        assert_eq!(mult_order(2, 7), 3);
        assert_eq!(factorize(341), vec![(11, 1), (31, 1)]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    }
}
