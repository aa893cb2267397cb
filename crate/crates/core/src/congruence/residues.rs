//! Quadratic-residue criteria picking the progressions `p n + r` that the
//! pentagonal and triangular exponents never reach.

use super::CongruenceError;
use crate::arith::{is_prime, pow_mod};

/// Legendre symbol `(a / p)` by Euler's criterion.
pub fn legendre(a: i64, p: u64) -> Result<i8, CongruenceError> {
    if p == 2 || !is_prime(p) {
        return Err(CongruenceError::Invalid(format!("{p} is not an odd prime")));
    }
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return Ok(0);
    }
    Ok(if pow_mod(a, (p - 1) / 2, p) == 1 { 1 } else { -1 })
}

fn check_prime(p: u64) -> Result<(), CongruenceError> {
    if p < 5 || !is_prime(p) {
        return Err(CongruenceError::Invalid(format!("expected a prime p >= 5, got {p}")));
    }
    Ok(())
}

fn nonresidue_classes(p: u64, scale: u64) -> Result<Vec<u64>, CongruenceError> {
    check_prime(p)?;
    let mut out = Vec::new();
    for r in 1..p {
        if legendre(((scale * r + 1) % p) as i64, p)? == -1 {
            out.push(r);
        }
    }
    Ok(out)
}

/// `r` in `[1, p-1]` with `24 r + 1` a nonresidue mod `p`: no pentagonal
/// number `m(3m-1)/2` is `r` mod `p`.
pub fn pentagonal_gap_residues(p: u64) -> Result<Vec<u64>, CongruenceError> {
    nonresidue_classes(p, 24)
}

/// `r` in `[1, p-1]` with `8 r + 1` a nonresidue mod `p`: no triangular
/// number `m(m+1)/2` is `r` mod `p`.
pub fn triangular_gap_residues(p: u64) -> Result<Vec<u64>, CongruenceError> {
    nonresidue_classes(p, 8)
}

/// The `r` in `[1, p-1]` with `8 r + 1 = 0 mod p`.
pub fn triangular_zero_residue(p: u64) -> Result<u64, CongruenceError> {
    check_prime(p)?;
    Ok((1..p).find(|r| (8 * r + 1) % p == 0).expect("8 is invertible mod p"))
}

/// Brute-force confirmation that no value of `g(m)` for `m` in `[0, p)`
/// lands in any of `classes` mod `p`. Since `g` is a polynomial, `[0, p)`
/// covers every residue of `m`.
pub fn classes_avoided(p: u64, classes: &[u64], g: impl Fn(u64) -> u64) -> bool {
    (0..p).all(|m| !classes.contains(&(g(m) % p)))
}

pub fn pentagonal(m: u64) -> u64 {
    // m(3m-1)/2 for m >= 0; negative m give m(3m+1)/2
    m * (3 * m).saturating_sub(1) / 2
}

pub fn pentagonal_negative(m: u64) -> u64 {
    m * (3 * m + 1) / 2
}

pub fn triangular(m: u64) -> u64 {
    m * (m + 1) / 2
}
