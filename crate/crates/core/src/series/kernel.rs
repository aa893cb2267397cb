//! Coefficient kernels. All of them skip zero coefficients of the sparser
//! operand, which matters for eta products (`f_k` has `O(sqrt T)` nonzero
//! terms below `q^T`).

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::Modulus;

fn nonzero_u64(a: &[u64]) -> Vec<usize> {
    (0..a.len()).filter(|&i| a[i] != 0).collect()
}

fn nonzero_big(a: &[BigInt]) -> Vec<usize> {
    (0..a.len()).filter(|&i| !a[i].is_zero()).collect()
}

/// `sum x*y mod m` over residues.
fn sum_products(m: Modulus, terms: impl Iterator<Item = (u64, u64)>) -> u64 {
    if m.is_small() {
        // each product is below 2^64, so 2^64 of them fit in a u128
        let acc: u128 = terms.map(|(x, y)| (x * y) as u128).sum();
        (acc % m.get() as u128) as u64
    } else {
        terms.fold(0, |acc, (x, y)| m.add(acc, m.mul(x, y)))
    }
}

/// Cauchy product mod `m`, first `order` coefficients.
pub(crate) fn mul_mod(a: &[u64], b: &[u64], order: usize, m: Modulus) -> Vec<u64> {
    let (a, b) = (&a[..order], &b[..order]);
    let (na, nb) = (nonzero_u64(a), nonzero_u64(b));
    let (outer, idx, inner) = if na.len() <= nb.len() { (a, na, b) } else { (b, nb, a) };
    let mut acc = vec![0u64; order];
    if m.is_small() {
        let batch = m.lazy_batch();
        let mut pending = 0u64;
        for &j in &idx {
            let aj = outer[j];
            for (slot, &bk) in acc[j..].iter_mut().zip(inner) {
                *slot += aj * bk;
            }
            pending += 1;
            if pending == batch {
                acc.iter_mut().for_each(|v| *v %= m.get());
                pending = 0;
            }
        }
        acc.iter_mut().for_each(|v| *v %= m.get());
    } else {
        for &j in &idx {
            let aj = outer[j];
            for (slot, &bk) in acc[j..].iter_mut().zip(inner) {
                *slot = m.add(*slot, m.mul(aj, bk));
            }
        }
    }
    acc
}

/// Cauchy product over `Z`, first `order` coefficients.
pub(crate) fn mul_exact(a: &[BigInt], b: &[BigInt], order: usize) -> Vec<BigInt> {
    let (a, b) = (&a[..order], &b[..order]);
    let (na, nb) = (nonzero_big(a), nonzero_big(b));
    let (outer, idx, inner, inner_nz) = if na.len() <= nb.len() {
        (a, na, b, nb)
    } else {
        (b, nb, a, na)
    };
    let mut acc = vec![BigInt::zero(); order];
    for &j in &idx {
        let aj = &outer[j];
        for &k in &inner_nz {
            if j + k >= order {
                break;
            }
            acc[j + k] += aj * &inner[k];
        }
    }
    acc
}

/// Coefficients `step*n + offset` (for `n < count`) of the product `a*b`.
pub(crate) fn mul_sifted_mod(
    a: &[u64],
    b: &[u64],
    step: usize,
    offset: usize,
    count: usize,
    m: Modulus,
) -> Vec<u64> {
    let na = nonzero_u64(a);
    (0..count)
        .map(|n| {
            let idx = step * n + offset;
            sum_products(m, na.iter().take_while(|&&j| j <= idx).map(|&j| (a[j], b[idx - j])))
        })
        .collect()
}

pub(crate) fn mul_sifted_exact(
    a: &[BigInt],
    b: &[BigInt],
    step: usize,
    offset: usize,
    count: usize,
) -> Vec<BigInt> {
    let (na, nb) = (nonzero_big(a), nonzero_big(b));
    let (outer, idx, inner) = if na.len() <= nb.len() { (a, na, b) } else { (b, nb, a) };
    (0..count)
        .map(|n| {
            let target = step * n + offset;
            let mut acc = BigInt::zero();
            for &j in idx.iter().take_while(|&&j| j <= target) {
                let other = &inner[target - j];
                if !other.is_zero() {
                    acc += &outer[j] * other;
                }
            }
            acc
        })
        .collect()
}

/// Solves `a * c = 1` mod `m` given the inverse of `a[0]`.
pub(crate) fn invert_mod(a: &[u64], a0_inv: u64, m: Modulus) -> Vec<u64> {
    let order = a.len();
    let na: Vec<usize> = nonzero_u64(a).into_iter().filter(|&j| j > 0).collect();
    let mut c = vec![0u64; order];
    if order == 0 {
        return c;
    }
    c[0] = a0_inv;
    for n in 1..order {
        let s = sum_products(m, na.iter().take_while(|&&j| j <= n).map(|&j| (a[j], c[n - j])));
        c[n] = m.mul(m.neg(s), a0_inv);
    }
    c
}

/// Solves `a * c = 1` over `Z` when `a[0] = ±1`.
pub(crate) fn invert_exact(a: &[BigInt]) -> Vec<BigInt> {
    let order = a.len();
    let a0 = a[0].clone();
    let na: Vec<usize> = nonzero_big(a).into_iter().filter(|&j| j > 0).collect();
    let mut c: Vec<BigInt> = Vec::with_capacity(order);
    c.push(a0.clone());
    for n in 1..order {
        let mut acc = BigInt::zero();
        for &j in na.iter().take_while(|&&j| j <= n) {
            acc += &a[j] * &c[n - j];
        }
        // a0^{-1} = a0 for a0 = ±1
        c.push(-(acc * &a0));
    }
    c
}

/// `a^e` over `Z` for `a[0] = ±1` via the log-derivative recurrence
/// `n a_0 g_n = sum_{j>=1} ((e+1) j - n) a_j g_{n-j}`.
///
/// Costs `O(T * nnz(a))` independent of `|e|`, and handles negative `e`.
pub(crate) fn pow_recurrence_exact(a: &[BigInt], e: i64) -> Vec<BigInt> {
    let order = a.len();
    let mut g: Vec<BigInt> = Vec::with_capacity(order);
    if order == 0 {
        return g;
    }
    let a0 = a[0].clone();
    debug_assert!(a0.abs() == BigInt::from(1));
    let g0 = if a0.is_negative() && e.rem_euclid(2) == 1 {
        BigInt::from(-1)
    } else {
        BigInt::from(1)
    };
    g.push(g0);
    let na: Vec<usize> = nonzero_big(a).into_iter().filter(|&j| j > 0).collect();
    let small: Vec<Option<i64>> = a.iter().map(num_traits::ToPrimitive::to_i64).collect();
    let e1 = e as i128 + 1;
    for n in 1..order {
        let mut acc = BigInt::zero();
        for &j in na.iter().take_while(|&&j| j <= n) {
            let weight = e1 * j as i128 - n as i128;
            if weight == 0 {
                continue;
            }
            match small[j].and_then(|aj| weight.checked_mul(aj as i128)) {
                Some(w) => acc += &g[n - j] * BigInt::from(w),
                None => acc += &g[n - j] * (&a[j] * BigInt::from(weight)),
            }
        }
        let denom = BigInt::from(n) * &a0;
        debug_assert!((&acc % &denom).is_zero(), "inexact division in power recurrence");
        g.push(acc / denom);
    }
    g
}
