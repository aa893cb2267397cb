use std::time::Instant;

use super::recurrence::{recurrence_table, RecurrenceState};
use super::IdentityError;
use crate::eta::{eval_dissected, eval_expr, f1_cubed_series, parse_expr, EtaExpr};
use crate::report::{Failure, Kind, ProofStatus, Status, VerificationReport};
use crate::series::{add, mul, scale, sub, CoefficientRing, SeriesError, TruncatedSeries};

/// How one side of an identity is produced.
#[derive(Debug, Clone, PartialEq)]
pub enum SeriesSource {
    Expr(EtaExpr),
    /// `sum_{m>=0} (-1)^m (2m+1) q^{m(m+1)/2}`.
    Jacobi,
    /// Successive `p`-dissections of `expr` at the residues in `chain`,
    /// innermost first.
    Dissect {
        expr: EtaExpr,
        p: usize,
        chain: Vec<usize>,
    },
    /// `A f5^2 f1^14 + B q f5^8 f1^8 + C q^2 f5^14 f1^2 + D q^3 f5^20/f1^4`
    /// with the recurrence coefficients at `alpha`.
    Recurrence { alpha: u32 },
    Product(Box<SeriesSource>, Box<SeriesSource>),
}

impl SeriesSource {
    fn expr(text: &str) -> Self {
        SeriesSource::Expr(parse_expr(text).expect("registry expression parses"))
    }

    fn dissect(text: &str, p: usize, chain: &[usize]) -> Self {
        SeriesSource::Dissect {
            expr: parse_expr(text).expect("registry expression parses"),
            p,
            chain: chain.to_vec(),
        }
    }

    pub fn evaluate(&self, ring: CoefficientRing, order: usize) -> Result<TruncatedSeries, IdentityError> {
        Ok(match self {
            SeriesSource::Expr(e) => eval_expr(e, ring, order)?,
            SeriesSource::Jacobi => f1_cubed_series(ring, order),
            SeriesSource::Dissect { expr, p, chain } => {
                // dissecting at r0, then r1, ... equals one p^len-dissection
                // at r0 + p r1 + p^2 r2 + ...
                let mut period = 1usize;
                let mut residue = 0usize;
                for &r in chain {
                    residue += r * period;
                    period = period
                        .checked_mul(*p)
                        .ok_or_else(|| SeriesError::InvalidArgument("dissection period overflows".into()))?;
                }
                if chain.is_empty() {
                    eval_expr(expr, ring, order)?
                } else {
                    eval_dissected(expr, ring, period, residue, order)?
                }
            }
            SeriesSource::Recurrence { alpha } => {
                let state = recurrence_table(*alpha)?
                    .pop()
                    .expect("table is nonempty")
                    .state;
                recurrence_series(&state, ring, order)?
            }
            SeriesSource::Product(a, b) => mul(&a.evaluate(ring, order)?, &b.evaluate(ring, order)?)?,
        })
    }
}

fn recurrence_series(
    s: &RecurrenceState,
    ring: CoefficientRing,
    order: usize,
) -> Result<TruncatedSeries, IdentityError> {
    let parts = [
        (&s.a, "f5^2*f1^14"),
        (&s.b, "q*f5^8*f1^8"),
        (&s.c, "q^2*f5^14*f1^2"),
        (&s.d, "q^3*f5^20/f1^4"),
    ];
    let mut acc = TruncatedSeries::zero(ring, order);
    for (c, text) in parts {
        let e = parse_expr(text).expect("fixed expression parses");
        acc = add(&acc, &scale(&eval_expr(&e, ring, order)?, c))?;
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentitySpec {
    pub id: String,
    pub description: String,
    pub lhs: SeriesSource,
    pub rhs: SeriesSource,
    pub ring: CoefficientRing,
    pub default_order: usize,
    pub proof_status: ProofStatus,
}

impl IdentitySpec {
    fn exact(id: &str, description: &str, lhs: SeriesSource, rhs: SeriesSource, order: usize) -> Self {
        IdentitySpec {
            id: id.to_string(),
            description: description.to_string(),
            lhs,
            rhs,
            ring: CoefficientRing::Exact,
            default_order: order,
            proof_status: ProofStatus::Proved,
        }
    }

    fn classical(mut self) -> Self {
        self.proof_status = ProofStatus::Classical;
        self
    }
}

const PRODUCT_ORDER: usize = 200;
const RR_ORDER: usize = 300;
const FIVE_ADIC_ORDER: usize = 150;
const LADDER_ORDER: usize = 60;

const INV_F1_RHS: &str = "f25^5/f5^6*(sub(R,5)^-4 + q*sub(R,5)^-3 + 2*q^2*sub(R,5)^-2 + 3*q^3/sub(R,5) \
     + 5*q^4 - 3*q^5*sub(R,5) + 2*q^6*sub(R,5)^2 - q^7*sub(R,5)^3 + q^8*sub(R,5)^4)";
const INV_F1_CROSS_RHS: &str = "f1*f25^5*(1 + q*sub(R,5) + 2*q^2*sub(R,5)^2 + 3*q^3*sub(R,5)^3 \
     + 5*q^4*sub(R,5)^4 - 3*q^5*sub(R,5)^5 + 2*q^6*sub(R,5)^6 - q^7*sub(R,5)^7 + q^8*sub(R,5)^8)";

fn fixed_identities() -> Vec<IdentitySpec> {
    use SeriesSource as S;
    let sec5 = |id: &str, what: &str, gf: &str, chain: &[usize], rhs: &str| {
        IdentitySpec::exact(id, what, S::dissect(gf, 5, chain), S::expr(rhs), FIVE_ADIC_ORDER)
    };
    let mut v = vec![
        IdentitySpec::exact("pent-f1", "Euler product of f1 equals the pentagonal-number series", S::expr("P(1,1)"), S::expr("f1"), PRODUCT_ORDER).classical(),
        IdentitySpec::exact("jacobi-f1cubed", "f1^3 equals the signed odd-number triangular series", S::expr("f1^3"), S::Jacobi, PRODUCT_ORDER).classical(),
        IdentitySpec::exact("dissect-inv-f1", "5-dissection of 1/f1 in terms of R(q^5)", S::expr("1/f1"), S::expr(INV_F1_RHS), PRODUCT_ORDER).classical(),
        IdentitySpec::exact("dissect-inv-f1-cross", "5-dissection of 1/f1, denominators cleared", S::expr("f5^6*sub(R,5)^4"), S::expr(INV_F1_CROSS_RHS), PRODUCT_ORDER).classical(),
        IdentitySpec::exact("dissect-f1", "5-dissection of f1 in terms of R(q^5)", S::expr("f1"), S::expr("f25*(1/sub(R,5) - q - q^2*sub(R,5))"), PRODUCT_ORDER).classical(),
        IdentitySpec::exact("dissect-f1-cross", "5-dissection of f1, denominators cleared", S::expr("f1*sub(R,5)"), S::expr("f25*(1 - q*sub(R,5) - q^2*sub(R,5)^2)"), PRODUCT_ORDER).classical(),
        IdentitySpec::exact("rr-relation", "R(q)^-5 - 11q - q^2 R(q)^5 = f1^6/f5^6", S::expr("R^-5 - 11*q - q^2*R^5"), S::expr("f1^6/f5^6"), RR_ORDER).classical(),
        IdentitySpec::exact("lemma-P4", "P4(5n+1) generating function", S::dissect("1/f1^4", 5, &[1]), S::expr("4*f5^2/f1^6 + 550*q*f5^8/f1^12 + 12500*q^2*f5^14/f1^18 + 78125*q^3*f5^20/f1^24"), PRODUCT_ORDER),
        IdentitySpec::exact("lemma-P4-interm", "P4(5n+1) generating function in terms of R(q)", S::dissect("1/f1^4", 5, &[1]), S::expr("f5^20/f1^24*(4*R^-15 + 418*q*R^-10 + 1840*q^2*R^-5 + 1015*q^3 - 1840*q^4*R^5 + 418*q^5*R^10 - 4*q^6*R^15)"), PRODUCT_ORDER),
        IdentitySpec::exact("lemma-Q4", "5n+4 part of f5^2 f1^14", S::dissect("f5^2*f1^14", 5, &[4]), S::expr("-15625*q^2*f5^14*f1^2"), PRODUCT_ORDER),
        IdentitySpec::exact("lemma-Q5", "5n+4 part of q f5^8 f1^8", S::dissect("q*f5^8*f1^8", 5, &[4]), S::expr("-125*q*f5^8*f1^8"), PRODUCT_ORDER),
        IdentitySpec::exact("lemma-Q6", "5n+4 part of q^2 f5^14 f1^2", S::dissect("q^2*f5^14*f1^2", 5, &[4]), S::expr("-f5^2*f1^14"), PRODUCT_ORDER),
        IdentitySpec::exact("eq19", "A(5,4; 5n+1) generating function", S::dissect("f5^20/f1^4", 5, &[1]), S::expr("4*f5^2*f1^14 + 550*q*f5^8*f1^8 + 12500*q^2*f5^14*f1^2 + 78125*q^3*f5^20/f1^4"), PRODUCT_ORDER),
    ];
    for alpha in 1..=2u32 {
        let mut chain = vec![1];
        chain.extend(std::iter::repeat_n(4, alpha as usize));
        v.push(IdentitySpec::exact(
            &format!("eq18-alpha-{alpha}"),
            &format!("A(5,4; 5^{}n + 5^{} - 4) generating function from the recurrence", alpha + 1, alpha + 1),
            S::dissect("f5^20/f1^4", 5, &chain),
            S::Recurrence { alpha },
            LADDER_ORDER,
        ));
    }
    v.extend([
        sec5("sec5-A52-25", "A(5,2; 25n+23) generating function", "f5^10/f1^2", &[3, 4], "25*(48*f1^4*f5^4 + 625*q*f5^10/f1^2)"),
        sec5("sec5-A52-125", "A(5,2; 125n+123) generating function", "f5^10/f1^2", &[3, 4, 4], "125*(1202*f1^4*f5^4 + 15625*q*f5^10/f1^2)"),
        sec5("sec5-A53-25", "A(5,3; 25n+22) generating function", "f5^15/f1^3", &[2, 4], "5*(5838*f1^9*f5^3 + 233250*q*f1^3*f5^9 + 1953125*q^2*f5^15/f1^3)"),
        sec5("sec5-A53-125", "A(5,3; 125n+122) generating function", "f5^15/f1^3", &[2, 4, 4], "25*(3643791*f1^9*f5^3 + 145754625*q*f1^3*f5^9 + 1220703125*q^2*f5^15/f1^3)"),
        sec5("sec5-A54-25", "A(5,4; 25n+21) generating function", "f5^20/f1^4", &[1, 4], "3125*(96*f1^14*f5^2 + 13728*q*f1^8*f5^8 + 312480*q^2*f1^2*f5^14 + 1953125*q^3*f5^20/f1^4)"),
        sec5("sec5-A54-125", "A(5,4; 125n+121) generating function", "f5^20/f1^4", &[1, 4, 4], "15625*(1500004*f1^14*f5^2 + 214500550*q*f1^8*f5^8 + 4882512500*q^2*f1^2*f5^14 + 30517578125*q^3*f5^20/f1^4)"),
    ]);
    v
}

fn freshman_identities() -> Vec<IdentitySpec> {
    let mut v = Vec::new();
    for p in [2u64, 3, 5, 7] {
        for k in 1..=3u32 {
            let m = p.pow(k);
            v.push(IdentitySpec {
                id: format!("freshman-p{p}-k{k}"),
                description: format!("f1^{m} = f{p}^{} mod {m}", p.pow(k - 1)),
                lhs: SeriesSource::Expr(EtaExpr::fk(1).pow(m as i64)),
                rhs: SeriesSource::Expr(EtaExpr::fk(p).pow(p.pow(k - 1) as i64)),
                ring: CoefficientRing::modulo(m).expect("modulus >= 2"),
                default_order: PRODUCT_ORDER,
                proof_status: ProofStatus::Classical,
            });
        }
    }
    v
}

/// `sum A(p, p^N i + k; pn + r) q^n = f1^{p^{N-1}(p^2-1)i} sum A(p, k; pn + r) q^n mod p^N`
/// on a small grid.
fn propagation_samples() -> Vec<IdentitySpec> {
    let mut v = Vec::new();
    for p in [5u64, 7] {
        for n in 1..=2u32 {
            let i = 1u64;
            for k in [1u64, 4] {
                for r in [1, p - 1] {
                    let m = p.pow(n);
                    let big_k = m * i + k;
                    let f1_exp = p.pow(n - 1) * (p * p - 1) * i;
                    let dissect = |kk: u64| SeriesSource::Dissect {
                        expr: EtaExpr::tuple_cores(p, kk),
                        p: p as usize,
                        chain: vec![r as usize],
                    };
                    v.push(IdentitySpec {
                        id: format!("cor2-sample-p{p}-N{n}-i{i}-k{k}-r{r}"),
                        description: format!(
                            "A({p},{big_k}; {p}n+{r}) series = f1^{f1_exp} * A({p},{k}; {p}n+{r}) series mod {m}"
                        ),
                        lhs: dissect(big_k),
                        rhs: SeriesSource::Product(
                            Box::new(SeriesSource::Expr(EtaExpr::fk(1).pow(f1_exp as i64))),
                            Box::new(dissect(k)),
                        ),
                        ring: CoefficientRing::modulo(m).expect("modulus >= 2"),
                        default_order: PRODUCT_ORDER,
                        proof_status: ProofStatus::Proved,
                    });
                }
            }
        }
    }
    v
}

/// Every registered identity, in a fixed order.
pub fn registry() -> Vec<IdentitySpec> {
    let mut v = fixed_identities();
    v.extend(freshman_identities());
    v.extend(propagation_samples());
    v
}

/// The identity with this id, or every identity whose id starts with
/// `target-` (so `cor2-sample` names the whole grid).
pub fn resolve_identities(target: &str) -> Result<Vec<IdentitySpec>, IdentityError> {
    let all = registry();
    if let Some(s) = all.iter().find(|s| s.id == target) {
        return Ok(vec![s.clone()]);
    }
    let prefix = format!("{target}-");
    let group: Vec<IdentitySpec> = all.into_iter().filter(|s| s.id.starts_with(&prefix)).collect();
    if group.is_empty() {
        return Err(IdentityError::Unknown(target.to_string()));
    }
    Ok(group)
}

pub fn find_identity(id: &str) -> Result<IdentitySpec, IdentityError> {
    registry()
        .into_iter()
        .find(|s| s.id == id)
        .ok_or_else(|| IdentityError::Unknown(id.to_string()))
}

/// Evaluates both sides of `spec` to `order` and compares coefficientwise.
pub fn verify_spec(spec: &IdentitySpec, order: usize) -> Result<VerificationReport, IdentityError> {
    if order == 0 {
        return Err(IdentityError::InvalidOrder);
    }
    let start = Instant::now();
    let lhs = spec.lhs.evaluate(spec.ring, order)?;
    let rhs = spec.rhs.evaluate(spec.ring, order)?;
    let diff = lhs.first_difference(&rhs);
    let (status, checked, failure) = match diff {
        None => (Status::Verified, order as u64, None),
        Some(i) => {
            let delta = sub(&lhs, &rhs)?.coeff(i);
            (
                Status::Counterexample,
                i as u64 + 1,
                Some(Failure {
                    index: i as u64,
                    value: delta.to_string(),
                }),
            )
        }
    };
    Ok(VerificationReport {
        id: spec.id.clone(),
        kind: Kind::Identity,
        status,
        checked,
        failure,
        source: spec.description.clone(),
        proof_status: spec.proof_status,
        reason: None,
        elapsed: start.elapsed(),
    })
}

pub fn verify_identity(id: &str, order: usize) -> Result<VerificationReport, IdentityError> {
    verify_spec(&find_identity(id)?, order)
}
