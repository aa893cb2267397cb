use num_bigint::BigInt;

use super::build::{fk_series, pochhammer_series, rr_series};
use super::EtaExpr;
use crate::series::ops::{dissected_order, inflate};
use crate::series::{
    add, dissect, mul, mul_sifted, neg, pow, scale, sub, CoefficientRing, SeriesError,
    TruncatedSeries,
};

/// Evaluates `e` to `order` coefficients in `ring`.
///
/// Divisions and negative powers need a denominator whose constant term is a
/// unit; in `Mod m` mode that means coprime to `m`.
pub fn eval_expr(
    e: &EtaExpr,
    ring: CoefficientRing,
    order: usize,
) -> Result<TruncatedSeries, SeriesError> {
    Evaluator { ring }.eval(e, order)
}

/// Evaluates `dissect(e, p, r)` to `order` coefficients.
///
/// Products at the top of `e` (below any sums, negations and integer
/// scalings) are only computed at the indices `p n + r` that survive.
pub fn eval_dissected(
    e: &EtaExpr,
    ring: CoefficientRing,
    p: usize,
    r: usize,
    order: usize,
) -> Result<TruncatedSeries, SeriesError> {
    if p < 2 || r >= p {
        return Err(SeriesError::InvalidArgument(format!(
            "dissection ({p}, {r}) needs p >= 2 and r < p"
        )));
    }
    Evaluator { ring }.dissected(e, p, r, order)
}

/// Input order needed so that `dissect(_, p, r)` yields `order` coefficients.
pub(crate) fn dissection_source_order(p: usize, r: usize, order: usize) -> usize {
    if order == 0 {
        0
    } else {
        p * (order - 1) + r + 1
    }
}

struct Evaluator {
    ring: CoefficientRing,
}

impl Evaluator {
    fn constant(&self, v: i64, order: usize) -> TruncatedSeries {
        TruncatedSeries::monomial(self.ring, order, 0, &BigInt::from(v))
    }

    fn eval(&self, e: &EtaExpr, order: usize) -> Result<TruncatedSeries, SeriesError> {
        match e {
            EtaExpr::Fk(k) => fk_series(*k, self.ring, order),
            EtaExpr::Pochhammer { a, b } => pochhammer_series(*a, *b, self.ring, order),
            EtaExpr::Rogers => Ok(rr_series(self.ring, order)),
            EtaExpr::Q => Ok(TruncatedSeries::monomial(self.ring, order, 1, &BigInt::from(1))),
            EtaExpr::Int(v) => Ok(self.constant(*v, order)),
            EtaExpr::Neg(x) => Ok(neg(&self.eval(x, order)?)),
            EtaExpr::Add(a, b) => add(&self.eval(a, order)?, &self.eval(b, order)?),
            EtaExpr::Sub(a, b) => sub(&self.eval(a, order)?, &self.eval(b, order)?),
            EtaExpr::Mul(a, b) => match (a.as_ref(), b.as_ref()) {
                (EtaExpr::Int(v), other) | (other, EtaExpr::Int(v)) => {
                    Ok(scale(&self.eval(other, order)?, &BigInt::from(*v)))
                }
                _ => mul(&self.eval(a, order)?, &self.eval(b, order)?),
            },
            EtaExpr::Div(a, b) => {
                let (num, den) = self.quotient_factors(a, b, order)?;
                mul(&num, &den)
            }
            EtaExpr::Pow(x, k) => self.power(x, *k, order),
            EtaExpr::Subst(x, k) => {
                let k = *k as usize;
                inflate(&self.eval(x, order.div_ceil(k))?, k, order)
            }
        }
    }

    /// Numerator and reciprocal of the denominator of `a / b`.
    fn quotient_factors(
        &self,
        a: &EtaExpr,
        b: &EtaExpr,
        order: usize,
    ) -> Result<(TruncatedSeries, TruncatedSeries), SeriesError> {
        let recip = match b {
            EtaExpr::Pow(base, k) => self.power(base, -*k, order)?,
            other => self.power(other, -1, order)?,
        };
        Ok((self.eval(a, order)?, recip))
    }

    /// `x^k`, evaluating `f_k` and substitutions at the reduced order before
    /// inflating, so only `ceil(T/k)` coefficients go through the power.
    fn power(&self, x: &EtaExpr, k: i64, order: usize) -> Result<TruncatedSeries, SeriesError> {
        match x {
            EtaExpr::Fk(j) if *j > 1 => {
                let j = *j as usize;
                let base = fk_series(1, self.ring, order.div_ceil(j))?;
                inflate(&pow(&base, k)?, j, order)
            }
            EtaExpr::Subst(inner, j) => {
                let j = *j as usize;
                inflate(&self.power(inner, k, order.div_ceil(j))?, j, order)
            }
            EtaExpr::Pow(inner, j) => {
                let e = j.checked_mul(k).ok_or_else(|| {
                    SeriesError::InvalidArgument("exponent overflows 64 bits".into())
                })?;
                self.power(inner, e, order)
            }
            _ => pow(&self.eval(x, order)?, k),
        }
    }

    fn dissected(
        &self,
        e: &EtaExpr,
        p: usize,
        r: usize,
        order: usize,
    ) -> Result<TruncatedSeries, SeriesError> {
        let source = dissection_source_order(p, r, order);
        let out = match e {
            EtaExpr::Neg(x) => neg(&self.dissected(x, p, r, order)?),
            EtaExpr::Add(a, b) => add(
                &self.dissected(a, p, r, order)?,
                &self.dissected(b, p, r, order)?,
            )?,
            EtaExpr::Sub(a, b) => sub(
                &self.dissected(a, p, r, order)?,
                &self.dissected(b, p, r, order)?,
            )?,
            EtaExpr::Mul(a, b) => match (a.as_ref(), b.as_ref()) {
                (EtaExpr::Int(v), other) | (other, EtaExpr::Int(v)) => {
                    scale(&self.dissected(other, p, r, order)?, &BigInt::from(*v))
                }
                _ => mul_sifted(&self.eval(a, source)?, &self.eval(b, source)?, p, r)?,
            },
            EtaExpr::Div(a, b) => {
                let (num, den) = self.quotient_factors(a, b, source)?;
                mul_sifted(&num, &den, p, r)?
            }
            other => dissect(&self.eval(other, source)?, p, r)?,
        };
        debug_assert_eq!(out.order(), dissected_order(source, p, r));
        Ok(out)
    }
}

/// Convenience for the common `ring`, `order` pair used by callers that
/// hold both a source expression and its text.
pub fn eval_text(
    text: &str,
    ring: CoefficientRing,
    order: usize,
) -> Result<TruncatedSeries, crate::Error> {
    let e = super::parse_expr(text)?;
    Ok(eval_expr(&e, ring, order)?)
}
