use num_bigint::BigInt;

use crate::series::{CoefficientRing, Coeffs, SeriesError, TruncatedSeries};

/// Multiplies `s` in place by `1 - q^e`.
fn mul_binomial(s: &mut TruncatedSeries, e: usize) {
    let ring = s.ring();
    let t = s.order();
    let mut coeffs = std::mem::replace(s, TruncatedSeries::zero(ring, 0)).into_coeffs();
    match (&mut coeffs, ring) {
        (Coeffs::Exact(c), _) => {
            for n in (e..t).rev() {
                let (lo, hi) = c.split_at_mut(n);
                hi[0] -= &lo[n - e];
            }
        }
        (Coeffs::Mod(c), CoefficientRing::Mod(m)) => {
            for n in (e..t).rev() {
                c[n] = m.sub(c[n], c[n - e]);
            }
        }
        _ => unreachable!(),
    }
    *s = TruncatedSeries::from_coeffs(ring, coeffs);
}

/// Divides `s` in place by `1 - q^e` (multiplies by `1 + q^e + q^{2e} + ...`).
fn div_binomial(s: &mut TruncatedSeries, e: usize) {
    let ring = s.ring();
    let t = s.order();
    let mut coeffs = std::mem::replace(s, TruncatedSeries::zero(ring, 0)).into_coeffs();
    match (&mut coeffs, ring) {
        (Coeffs::Exact(c), _) => {
            for n in e..t {
                let (lo, hi) = c.split_at_mut(n);
                hi[0] += &lo[n - e];
            }
        }
        (Coeffs::Mod(c), CoefficientRing::Mod(m)) => {
            for n in e..t {
                c[n] = m.add(c[n], c[n - e]);
            }
        }
        _ => unreachable!(),
    }
    *s = TruncatedSeries::from_coeffs(ring, coeffs);
}

/// `(q^a; q^b)_inf = prod_{i>=0} (1 - q^{a + i b})`, truncated at `order`.
pub fn pochhammer_series(
    a: u64,
    b: u64,
    ring: CoefficientRing,
    order: usize,
) -> Result<TruncatedSeries, SeriesError> {
    if a == 0 || a > b {
        return Err(SeriesError::InvalidArgument(format!(
            "(q^{a}; q^{b}) needs 1 <= a <= b"
        )));
    }
    let mut s = TruncatedSeries::one(ring, order);
    let mut e = a as usize;
    while e < order {
        mul_binomial(&mut s, e);
        e += b as usize;
    }
    Ok(s)
}

/// Exponents and signs of the pentagonal-number expansion of `f_1` below
/// `order`: `f_1 = sum_m (-1)^m q^{m(3m-1)/2}` over all integers `m`.
pub(crate) fn pentagonal_terms(order: usize) -> Vec<(usize, i64)> {
    let mut terms = vec![(0usize, 1i64)];
    let mut m: usize = 1;
    loop {
        let lo = m * (3 * m - 1) / 2;
        if lo >= order {
            break;
        }
        let sign = if m % 2 == 1 { -1 } else { 1 };
        terms.push((lo, sign));
        let hi = m * (3 * m + 1) / 2;
        if hi < order {
            terms.push((hi, sign));
        }
        m += 1;
    }
    terms.sort_unstable();
    terms
}

/// `f_k = (q^k; q^k)_inf` from the pentagonal number theorem.
pub fn fk_series(k: u64, ring: CoefficientRing, order: usize) -> Result<TruncatedSeries, SeriesError> {
    if k == 0 {
        return Err(SeriesError::InvalidArgument("f_k needs k >= 1".into()));
    }
    let k = k as usize;
    let mut s = TruncatedSeries::zero(ring, order);
    for (e, sign) in pentagonal_terms(order.div_ceil(k)) {
        if e * k < order {
            s.set(e * k, &BigInt::from(sign));
        }
    }
    Ok(s)
}

/// `sum_{m>=0} (-1)^m (2m+1) q^{m(m+1)/2}`, which equals `f_1^3`.
pub fn f1_cubed_series(ring: CoefficientRing, order: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(ring, order);
    let mut m: usize = 0;
    while m * (m + 1) / 2 < order {
        let c = (2 * m as i64 + 1) * if m.is_multiple_of(2) { 1 } else { -1 };
        s.set(m * (m + 1) / 2, &BigInt::from(c));
        m += 1;
    }
    s
}

/// `R(q) = (q;q^5)(q^4;q^5) / ((q^2;q^5)(q^3;q^5))`.
pub fn rr_series(ring: CoefficientRing, order: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::one(ring, order);
    for (start, multiply) in [(1usize, true), (4, true), (2, false), (3, false)] {
        let mut e = start;
        while e < order {
            if multiply {
                mul_binomial(&mut s, e);
            } else {
                div_binomial(&mut s, e);
            }
            e += 5;
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{invert, mul, pow, subst_qk};

    const EX: CoefficientRing = CoefficientRing::Exact;

    fn ints(s: &TruncatedSeries) -> Vec<i64> {
        (0..s.order()).map(|n| s.coeff_i64(n).unwrap()).collect()
    }

    #[test]
    fn euler_product_matches_pentagonal_values() {
        let f1 = pochhammer_series(1, 1, EX, 15).unwrap();
        let c = ints(&f1);
        let nonzero: Vec<(usize, i64)> = (0..15).filter(|&n| c[n] != 0).map(|n| (n, c[n])).collect();
        assert_eq!(nonzero, vec![(0, 1), (1, -1), (2, -1), (5, 1), (7, 1), (12, -1)]);
    }

    #[test]
    fn residue_class_factorisation_of_f1() {
        let mut acc = TruncatedSeries::one(EX, 120);
        for a in 1..=5 {
            acc = mul(&acc, &pochhammer_series(a, 5, EX, 120).unwrap()).unwrap();
        }
        assert_eq!(acc, fk_series(1, EX, 120).unwrap());
    }

    #[test]
    fn pochhammer_five_five_is_f5() {
        let f1 = fk_series(1, EX, 100).unwrap();
        assert_eq!(pochhammer_series(5, 5, EX, 100).unwrap(), subst_qk(&f1, 5).unwrap());
    }

    #[test]
    fn pochhammer_rejects_bad_parameters() {
        assert!(pochhammer_series(0, 5, EX, 10).is_err());
        assert!(pochhammer_series(6, 5, EX, 10).is_err());
    }

    #[test]
    fn f1_first_terms() {
        assert_eq!(ints(&fk_series(1, EX, 8).unwrap()), vec![1, -1, -1, 0, 0, 1, 0, 1]);
        assert!(fk_series(0, EX, 8).is_err());
    }

    #[test]
    fn f25_first_nonconstant_term() {
        let s = fk_series(25, EX, 100).unwrap();
        assert_eq!(s.support(), vec![0, 25, 50]);
    }

    #[test]
    fn five_core_counts_from_f5_fifth_over_f1() {
        // 5-core counts for n = 0..6 by hook-length filtering: 1,1,2,3,5,2,6
        let f5 = fk_series(5, EX, 7).unwrap();
        let g = mul(&pow(&f5, 5).unwrap(), &invert(&fk_series(1, EX, 7).unwrap()).unwrap()).unwrap();
        assert_eq!(ints(&g), vec![1, 1, 2, 3, 5, 2, 6]);
    }

    #[test]
    fn jacobi_series_values() {
        let s = f1_cubed_series(EX, 11);
        let c = ints(&s);
        assert_eq!([c[0], c[1], c[3], c[6], c[10]], [1, -3, 5, -7, 9]);
        assert_eq!(c[2], 0);
    }

    #[test]
    fn rogers_quotient_low_terms() {
        let r = rr_series(EX, 10);
        assert_eq!(r.coeff_i64(0), Some(1));
        assert_eq!(r.coeff_i64(1), Some(-1));
        // direct quotient of the four products
        let t = 40;
        let num = mul(
            &pochhammer_series(1, 5, EX, t).unwrap(),
            &pochhammer_series(4, 5, EX, t).unwrap(),
        )
        .unwrap();
        let den = mul(
            &pochhammer_series(2, 5, EX, t).unwrap(),
            &pochhammer_series(3, 5, EX, t).unwrap(),
        )
        .unwrap();
        assert_eq!(mul(&num, &invert(&den).unwrap()).unwrap(), rr_series(EX, t));
    }
}
