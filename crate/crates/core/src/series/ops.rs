use num_bigint::BigInt;
use num_traits::Zero;

use super::kernel;
use super::{CoefficientRing, Coeffs, Modulus, SeriesError, TruncatedSeries};

fn same_ring(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<(), SeriesError> {
    if a.ring() != b.ring() {
        return Err(SeriesError::RingMismatch {
            left: a.ring(),
            right: b.ring(),
        });
    }
    Ok(())
}

fn non_unit(a: &TruncatedSeries) -> SeriesError {
    SeriesError::NonUnit {
        ring: a.ring(),
        value: if a.order() == 0 {
            "<empty>".to_string()
        } else {
            a.coeff(0).to_string()
        },
    }
}

pub fn add(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
    same_ring(a, b)?;
    let t = a.order().min(b.order());
    let coeffs = match (a.coeffs(), b.coeffs(), a.ring()) {
        (Coeffs::Exact(x), Coeffs::Exact(y), _) => {
            Coeffs::Exact(x[..t].iter().zip(&y[..t]).map(|(u, v)| u + v).collect())
        }
        (Coeffs::Mod(x), Coeffs::Mod(y), CoefficientRing::Mod(m)) => {
            Coeffs::Mod(x[..t].iter().zip(&y[..t]).map(|(&u, &v)| m.add(u, v)).collect())
        }
        _ => unreachable!(),
    };
    Ok(TruncatedSeries::from_coeffs(a.ring(), coeffs))
}

pub fn neg(a: &TruncatedSeries) -> TruncatedSeries {
    let coeffs = match (a.coeffs(), a.ring()) {
        (Coeffs::Exact(x), _) => Coeffs::Exact(x.iter().map(|u| -u).collect()),
        (Coeffs::Mod(x), CoefficientRing::Mod(m)) => Coeffs::Mod(x.iter().map(|&u| m.neg(u)).collect()),
        _ => unreachable!(),
    };
    TruncatedSeries::from_coeffs(a.ring(), coeffs)
}

pub fn sub(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
    add(a, &neg(b))
}

/// Multiplies every coefficient by the integer `c`.
pub fn scale(a: &TruncatedSeries, c: &BigInt) -> TruncatedSeries {
    let coeffs = match (a.coeffs(), a.ring()) {
        (Coeffs::Exact(x), _) => Coeffs::Exact(x.iter().map(|u| u * c).collect()),
        (Coeffs::Mod(x), CoefficientRing::Mod(m)) => {
            let cm = m.reduce_bigint(c);
            Coeffs::Mod(x.iter().map(|&u| m.mul(u, cm)).collect())
        }
        _ => unreachable!(),
    };
    TruncatedSeries::from_coeffs(a.ring(), coeffs)
}

/// Cauchy product truncated at the smaller operand order.
pub fn mul(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
    same_ring(a, b)?;
    let t = a.order().min(b.order());
    let coeffs = match (a.coeffs(), b.coeffs(), a.ring()) {
        (Coeffs::Exact(x), Coeffs::Exact(y), _) => Coeffs::Exact(kernel::mul_exact(x, y, t)),
        (Coeffs::Mod(x), Coeffs::Mod(y), CoefficientRing::Mod(m)) => {
            Coeffs::Mod(kernel::mul_mod(x, y, t, m))
        }
        _ => unreachable!(),
    };
    Ok(TruncatedSeries::from_coeffs(a.ring(), coeffs))
}

/// `dissect(mul(a, b), p, r)` without computing the discarded coefficients.
pub fn mul_sifted(
    a: &TruncatedSeries,
    b: &TruncatedSeries,
    p: usize,
    r: usize,
) -> Result<TruncatedSeries, SeriesError> {
    same_ring(a, b)?;
    check_dissection(p, r)?;
    let t = a.order().min(b.order());
    let count = dissected_order(t, p, r);
    let coeffs = match (a.coeffs(), b.coeffs(), a.ring()) {
        (Coeffs::Exact(x), Coeffs::Exact(y), _) => {
            Coeffs::Exact(kernel::mul_sifted_exact(&x[..t], &y[..t], p, r, count))
        }
        (Coeffs::Mod(x), Coeffs::Mod(y), CoefficientRing::Mod(m)) => {
            Coeffs::Mod(kernel::mul_sifted_mod(&x[..t], &y[..t], p, r, count, m))
        }
        _ => unreachable!(),
    };
    Ok(TruncatedSeries::from_coeffs(a.ring(), coeffs))
}

/// Multiplicative inverse; the constant term must be a unit.
pub fn invert(a: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
    if !a.has_unit_constant() {
        return Err(non_unit(a));
    }
    let coeffs = match (a.coeffs(), a.ring()) {
        (Coeffs::Exact(x), _) => Coeffs::Exact(kernel::invert_exact(x)),
        (Coeffs::Mod(x), CoefficientRing::Mod(m)) => {
            let inv = m.inverse(x[0]).ok_or_else(|| non_unit(a))?;
            Coeffs::Mod(kernel::invert_mod(x, inv, m))
        }
        _ => unreachable!(),
    };
    Ok(TruncatedSeries::from_coeffs(a.ring(), coeffs))
}

/// `a^e` by repeated squaring; negative `e` inverts first.
pub fn pow_by_squaring(a: &TruncatedSeries, e: i64) -> Result<TruncatedSeries, SeriesError> {
    let mut base = if e < 0 { invert(a)? } else { a.clone() };
    let mut e = e.unsigned_abs();
    let mut acc = TruncatedSeries::one(a.ring(), a.order());
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &base)?;
        }
        e >>= 1;
        if e > 0 {
            base = mul(&base, &base)?;
        }
    }
    Ok(acc)
}

/// `a^e` for any integer `e`. `pow(a, 0) = 1`.
///
/// Over `Z` with constant term `±1` this runs the log-derivative power
/// recurrence (cost independent of `e`); otherwise it falls back to
/// [`pow_by_squaring`]. Both routes agree coefficient for coefficient.
pub fn pow(a: &TruncatedSeries, e: i64) -> Result<TruncatedSeries, SeriesError> {
    if e == 0 {
        return Ok(TruncatedSeries::one(a.ring(), a.order()));
    }
    if e == 1 {
        return Ok(a.clone());
    }
    match a.coeffs() {
        Coeffs::Exact(x) if a.constant_is_plus_minus_one() => Ok(TruncatedSeries::from_coeffs(
            a.ring(),
            Coeffs::Exact(kernel::pow_recurrence_exact(x, e)),
        )),
        _ => pow_by_squaring(a, e),
    }
}

/// Substitutes `q -> q^k`, keeping the order.
pub fn subst_qk(a: &TruncatedSeries, k: usize) -> Result<TruncatedSeries, SeriesError> {
    inflate(a, k, a.order())
}

/// Substitutes `q -> q^k` and returns `target` coefficients. Needs
/// `target <= k * a.order()` so that every output coefficient is determined.
pub(crate) fn inflate(
    a: &TruncatedSeries,
    k: usize,
    target: usize,
) -> Result<TruncatedSeries, SeriesError> {
    if k == 0 {
        return Err(SeriesError::InvalidArgument("substitution power must be >= 1".into()));
    }
    if target > k.saturating_mul(a.order()) {
        return Err(SeriesError::InvalidArgument(format!(
            "q -> q^{k} of an order-{} series determines only {} coefficients, {target} requested",
            a.order(),
            k * a.order()
        )));
    }
    let coeffs = match a.coeffs() {
        Coeffs::Exact(x) => {
            let mut out = vec![BigInt::zero(); target];
            for (i, c) in x.iter().enumerate() {
                if i * k >= target {
                    break;
                }
                out[i * k] = c.clone();
            }
            Coeffs::Exact(out)
        }
        Coeffs::Mod(x) => {
            let mut out = vec![0; target];
            for (i, &c) in x.iter().enumerate() {
                if i * k >= target {
                    break;
                }
                out[i * k] = c;
            }
            Coeffs::Mod(out)
        }
    };
    Ok(TruncatedSeries::from_coeffs(a.ring(), coeffs))
}

fn check_dissection(p: usize, r: usize) -> Result<(), SeriesError> {
    if p < 2 {
        return Err(SeriesError::InvalidArgument(format!("dissection modulus must be >= 2, got {p}")));
    }
    if r >= p {
        return Err(SeriesError::InvalidArgument(format!("residue {r} not below {p}")));
    }
    Ok(())
}

pub(crate) fn dissected_order(order: usize, p: usize, r: usize) -> usize {
    if order <= r {
        0
    } else {
        (order - r).div_ceil(p)
    }
}

/// `result_n = a_{p n + r}`, order `ceil((T - r) / p)`.
pub fn dissect(a: &TruncatedSeries, p: usize, r: usize) -> Result<TruncatedSeries, SeriesError> {
    check_dissection(p, r)?;
    let t = dissected_order(a.order(), p, r);
    let coeffs = match a.coeffs() {
        Coeffs::Exact(x) => Coeffs::Exact((0..t).map(|n| x[p * n + r].clone()).collect()),
        Coeffs::Mod(x) => Coeffs::Mod((0..t).map(|n| x[p * n + r]).collect()),
    };
    Ok(TruncatedSeries::from_coeffs(a.ring(), coeffs))
}

/// Multiplies by `q^j`, keeping the order.
pub fn shift(a: &TruncatedSeries, j: usize) -> TruncatedSeries {
    let t = a.order();
    let coeffs = match a.coeffs() {
        Coeffs::Exact(x) => Coeffs::Exact(
            (0..t)
                .map(|n| if n >= j { x[n - j].clone() } else { BigInt::zero() })
                .collect(),
        ),
        Coeffs::Mod(x) => Coeffs::Mod((0..t).map(|n| if n >= j { x[n - j] } else { 0 }).collect()),
    };
    TruncatedSeries::from_coeffs(a.ring(), coeffs)
}

/// Coefficientwise reduction into `[0, m)`.
///
/// Accepts an exact series, or a `Mod m'` series when `m | m'`.
pub fn reduce_mod(a: &TruncatedSeries, m: u64) -> Result<TruncatedSeries, SeriesError> {
    let modulus = Modulus::new(m)?;
    match (a.coeffs(), a.ring()) {
        (Coeffs::Exact(x), _) => Ok(TruncatedSeries::from_residues(
            modulus,
            x.iter().map(|c| modulus.reduce_bigint(c)).collect(),
        )),
        (Coeffs::Mod(x), CoefficientRing::Mod(src)) if src.get() % m == 0 => Ok(
            TruncatedSeries::from_residues(modulus, x.iter().map(|&c| c % m).collect()),
        ),
        _ => Err(SeriesError::RingMismatch {
            left: a.ring(),
            right: CoefficientRing::Mod(modulus),
        }),
    }
}

/// `1 - q` style helper used throughout the tests: the polynomial with the
/// given integer coefficients.
pub fn polynomial(ring: CoefficientRing, order: usize, coeffs: &[i64]) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(ring, order);
    for (i, &c) in coeffs.iter().enumerate().take(order) {
        s.set(i, &BigInt::from(c));
    }
    s
}

#[cfg(test)]
pub(crate) fn is_one(a: &TruncatedSeries) -> bool {
    (0..a.order()).all(|n| {
        if n == 0 {
            num_traits::One::is_one(&a.coeff(0))
        } else {
            a.is_zero_at(n)
        }
    })
}
