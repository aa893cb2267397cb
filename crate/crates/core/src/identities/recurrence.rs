//! Coefficient recurrence for the iterated 5-dissections of the 4-tuple
//! generating function, and 5-adic valuations of its terms.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::IdentityError;
use crate::arith::is_prime;

pub const MAX_ALPHA: u32 = 64;

/// `(A, B, C, D)` at level `alpha`: the coefficients of
/// `f5^2 f1^14`, `q f5^8 f1^8`, `q^2 f5^14 f1^2` and `q^3 f5^20/f1^4`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceState {
    pub alpha: u32,
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl RecurrenceState {
    pub fn base() -> Self {
        RecurrenceState {
            alpha: 0,
            a: BigInt::from(4),
            b: BigInt::from(550),
            c: BigInt::from(12500),
            d: BigInt::from(78125),
        }
    }

    pub fn terms(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }
}

pub fn recurrence_step(s: &RecurrenceState) -> RecurrenceState {
    RecurrenceState {
        alpha: s.alpha + 1,
        a: -&s.c + 4 * &s.d,
        b: -125 * &s.b + 550 * &s.d,
        c: -15625 * &s.a + 12500 * &s.d,
        d: 78125 * &s.d,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    pub fn at_least(self, bound: u32) -> bool {
        match self {
            Valuation::Finite(v) => v >= bound,
            Valuation::Infinite => true,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_u32(*v),
            Valuation::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Valuation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u32),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(v) => Ok(Valuation::Finite(v)),
            Raw::S(s) if s == "inf" => Ok(Valuation::Infinite),
            Raw::S(s) => Err(serde::de::Error::custom(format!("bad valuation {s:?}"))),
        }
    }
}

/// Largest `e` with `p^e | x`; infinite for `x = 0`.
pub fn nu_p(x: &BigInt, p: u64) -> Result<Valuation, IdentityError> {
    if !is_prime(p) {
        return Err(IdentityError::NotPrime(p));
    }
    if x.is_zero() {
        return Ok(Valuation::Infinite);
    }
    let p = BigInt::from(p);
    let mut rest = x.abs();
    let mut e = 0;
    loop {
        let (q, r) = rest.div_rem(&p);
        if !r.is_zero() {
            return Ok(Valuation::Finite(e));
        }
        rest = q;
        e += 1;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceRow {
    pub state: RecurrenceState,
    pub valuations: [Valuation; 4],
    /// Every valuation is at least `alpha + 4`. `None` at `alpha = 0`.
    pub theorem_bound_ok: Option<bool>,
    /// The sharper per-column bounds `alpha + (4, 5, 5, 6)`. `None` at `alpha = 0`.
    pub strict_bound_ok: Option<bool>,
}

impl RecurrenceRow {
    fn new(state: RecurrenceState) -> Self {
        let valuations = state
            .terms()
            .map(|x| nu_p(x, 5).expect("5 is prime"));
        let (theorem, strict) = if state.alpha == 0 {
            (None, None)
        } else {
            let a = state.alpha;
            let theorem = valuations.iter().all(|v| v.at_least(a + 4));
            let strict = valuations
                .iter()
                .zip([4, 5, 5, 6])
                .all(|(v, extra)| v.at_least(a + extra));
            (Some(theorem), Some(strict))
        };
        RecurrenceRow {
            state,
            valuations,
            theorem_bound_ok: theorem,
            strict_bound_ok: strict,
        }
    }

    pub fn min_valuation(&self) -> Valuation {
        *self.valuations.iter().min().expect("four entries")
    }
}

/// Rows for `alpha = 0..=alpha_max`.
pub fn recurrence_table(alpha_max: u32) -> Result<Vec<RecurrenceRow>, IdentityError> {
    if alpha_max > MAX_ALPHA {
        return Err(IdentityError::AlphaTooLarge(alpha_max));
    }
    let mut rows = Vec::with_capacity(alpha_max as usize + 1);
    let mut s = RecurrenceState::base();
    loop {
        let next = (s.alpha < alpha_max).then(|| recurrence_step(&s));
        rows.push(RecurrenceRow::new(s));
        match next {
            Some(n) => s = n,
            None => return Ok(rows),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecurrenceRowJson {
    pub alpha: u32,
    pub a: String,
    pub b: String,
    pub c: String,
    pub d: String,
    pub nu5: [Valuation; 4],
    pub theorem_bound_ok: Option<bool>,
    pub strict_bound_ok: Option<bool>,
}

impl From<&RecurrenceRow> for RecurrenceRowJson {
    fn from(r: &RecurrenceRow) -> Self {
        let s = &r.state;
        RecurrenceRowJson {
            alpha: s.alpha,
            a: s.a.to_string(),
            b: s.b.to_string(),
            c: s.c.to_string(),
            d: s.d.to_string(),
            nu5: r.valuations,
            theorem_bound_ok: r.theorem_bound_ok,
            strict_bound_ok: r.strict_bound_ok,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::pow;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn first_step() {
        let s = recurrence_step(&RecurrenceState::base());
        assert_eq!(s.alpha, 1);
        assert_eq!(s.a, big(300000));
        assert_eq!(s.b, big(42900000));
        assert_eq!(s.c, big(-15625 * 4 + 12500 * 78125));
        assert_eq!(s.d, pow(big(5), 14));
    }

    #[test]
    fn valuations() {
        assert_eq!(nu_p(&big(78125), 5).unwrap(), Valuation::Finite(7));
        assert_eq!(nu_p(&big(550), 5).unwrap(), Valuation::Finite(2));
        assert_eq!(nu_p(&big(-550), 5).unwrap(), Valuation::Finite(2));
        assert_eq!(nu_p(&big(0), 5).unwrap(), Valuation::Infinite);
        assert_eq!(nu_p(&big(7), 5).unwrap(), Valuation::Finite(0));
        assert_eq!(nu_p(&big(10), 6), Err(IdentityError::NotPrime(6)));
    }

    #[test]
    fn table_rows() {
        let t = recurrence_table(2).unwrap();
        assert_eq!(t.len(), 3);
        let f = Valuation::Finite;
        assert_eq!(t[0].valuations, [f(0), f(2), f(5), f(7)]);
        assert_eq!(t[0].theorem_bound_ok, None);
        assert_eq!(t[1].valuations, [f(5), f(5), f(6), f(14)]);
        assert_eq!(t[1].theorem_bound_ok, Some(true));
        assert_eq!(t[1].strict_bound_ok, Some(false));
        assert_eq!(t[2].state.d, pow(big(5), 21));
    }

    #[test]
    fn bounds_through_twelve() {
        for row in recurrence_table(12).unwrap().iter().skip(1) {
            let a = row.state.alpha;
            assert!(row.min_valuation().at_least(a + 4), "alpha {a}");
            assert_eq!(row.state.d, pow(big(5), 7 * (a as usize + 1)));
        }
    }

    #[test]
    fn alpha_cap() {
        assert!(recurrence_table(64).is_ok());
        assert_eq!(recurrence_table(65), Err(IdentityError::AlphaTooLarge(65)));
    }

    #[test]
    fn row_json_round_trip() {
        let rows = recurrence_table(1).unwrap();
        let j: Vec<RecurrenceRowJson> = rows.iter().map(Into::into).collect();
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.contains("\"b\":\"42900000\""));
        let back: Vec<RecurrenceRowJson> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, j);
        let inf: Valuation = serde_json::from_str("\"inf\"").unwrap();
        assert_eq!(inf, Valuation::Infinite);
    }
}
