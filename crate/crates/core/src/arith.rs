//! Small integer helpers.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// `(p, N)` with `m = p^N`, if `m` is a prime power.
pub fn prime_power(m: u64) -> Option<(u64, u32)> {
    if m < 2 {
        return None;
    }
    let p = (2u64..)
        .take_while(|d| d.saturating_mul(*d) <= m)
        .find(|d| m.is_multiple_of(*d))
        .unwrap_or(m);
    let mut rest = m;
    let mut n = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        n += 1;
    }
    (rest == 1).then_some((p, n))
}

/// `a^e mod m`.
pub fn pow_mod(a: u64, mut e: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut base = (a % m) as u128;
    let mut acc: u128 = 1 % m128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m128;
        }
        base = base * base % m128;
        e >>= 1;
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(97));
        assert!(!is_prime(91));
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(3125), Some((5, 5)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(2), Some((2, 1)));
        assert_eq!(prime_power(49), Some((7, 2)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn modular_power() {
        assert_eq!(pow_mod(4, 2, 5), 1);
        assert_eq!(pow_mod(3, 2, 5), 4);
        assert_eq!(pow_mod(2, 10, 1000), 24);
    }
}
