//! Finite expansions of the congruence families into concrete claims.

use std::collections::HashSet;
use std::ops::RangeInclusive;

use super::claim::{ClaimSubject, CongruenceClaim};
use super::residues::{pentagonal_gap_residues, triangular_gap_residues, triangular_zero_residue};
use super::CongruenceError;
use crate::report::ProofStatus;

pub const FAMILY_IDS: &[&str] = &[
    "eq-d",
    "eq-f",
    "thm-1.1",
    "thm-1.2",
    "thm-1.3",
    "thm-1.4",
    "thm-1.5",
    "thm-1.6",
    "cor-1.8",
    "sec7-proved",
    "sec7-conjectures",
    "ramanujan-classical",
];

pub const SUITE_IDS: &[&str] = &["paper-proved", "paper-conjectures", "general-theorems", "paper-all"];

const PROVED_FAMILIES: &[&str] = &[
    "eq-d",
    "eq-f",
    "thm-1.1",
    "thm-1.2",
    "thm-1.3",
    "thm-1.4",
    "thm-1.5",
    "thm-1.6",
    "cor-1.8",
    "sec7-proved",
    "ramanujan-classical",
];

/// Overrides for the default parameter grids. `None` keeps the family's
/// default.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FamilyParams {
    pub alpha: Option<RangeInclusive<u32>>,
    pub primes: Option<Vec<u64>>,
    pub powers: Option<RangeInclusive<u32>>,
    pub i: Option<RangeInclusive<u64>>,
}

impl FamilyParams {
    fn alpha(&self, default: RangeInclusive<u32>) -> RangeInclusive<u32> {
        self.alpha.clone().unwrap_or(default)
    }

    fn primes(&self) -> Vec<u64> {
        self.primes.clone().unwrap_or_else(|| vec![5, 7, 11, 13])
    }

    fn powers(&self) -> RangeInclusive<u32> {
        self.powers.clone().unwrap_or(1..=2)
    }

    fn i(&self, default: RangeInclusive<u64>) -> RangeInclusive<u64> {
        self.i.clone().unwrap_or(default)
    }
}

/// `A(5, k_step i + k_base; M n + r...) = 0 mod 5^N`.
struct Template {
    k_step: u64,
    k_base: u64,
    period: u64,
    residues: &'static [u64],
    power: u32,
}

const fn tpl(k_step: u64, k_base: u64, period: u64, residues: &'static [u64], power: u32) -> Template {
    Template {
        k_step,
        k_base,
        period,
        residues,
        power,
    }
}

const FIXED_FIVE: &[Template] = &[
    tpl(0, 2, 25, &[23], 2),
    tpl(0, 2, 125, &[123], 3),
    tpl(0, 3, 25, &[22], 1),
    tpl(0, 3, 125, &[122], 2),
    tpl(0, 4, 25, &[21], 5),
    tpl(0, 4, 125, &[121], 6),
];

const LIFTED_FIVE: &[Template] = &[
    tpl(25, 2, 25, &[23], 1),
    tpl(125, 2, 25, &[23], 2),
    tpl(3125, 2, 125, &[123], 3),
    tpl(25, 3, 25, &[22], 1),
    tpl(625, 3, 125, &[122], 2),
    tpl(5, 4, 5, &[3, 4], 1),
    tpl(125, 4, 25, &[21], 2),
    tpl(25, 4, 25, &[21], 1),
    tpl(125, 4, 25, &[21], 2),
    tpl(625, 4, 25, &[21], 3),
    tpl(3125, 4, 25, &[21], 4),
    tpl(15625, 4, 25, &[21], 5),
    tpl(390625, 4, 125, &[121], 6),
];

const HIGHER_K_FIVE: &[Template] = &[
    tpl(0, 6, 25, &[14, 19, 24], 2),
    tpl(0, 6, 125, &[119], 3),
    tpl(0, 7, 25, &[13, 18, 23], 2),
    tpl(0, 7, 125, &[118], 3),
    tpl(25, 6, 25, &[14, 19, 24], 1),
    tpl(125, 6, 25, &[14, 19, 24], 2),
    tpl(3125, 6, 125, &[119], 3),
    tpl(25, 7, 25, &[13, 18, 23], 1),
    tpl(125, 7, 25, &[13, 18, 23], 2),
    tpl(3125, 7, 125, &[118], 3),
];

const OPEN_FIVE: &[Template] = &[
    tpl(5, 1, 25, &[24], 2),
    tpl(25, 2, 25, &[23], 2),
    tpl(125, 2, 125, &[123], 3),
    tpl(125, 3, 125, &[122], 2),
    tpl(625, 4, 125, &[121], 5),
    tpl(3125, 4, 125, &[121], 6),
    tpl(25, 6, 25, &[14, 19], 2),
    tpl(25, 6, 125, &[119], 3),
    tpl(25, 7, 25, &[13, 18, 23], 2),
    tpl(125, 7, 125, &[118], 3),
];

fn from_templates(
    templates: &[Template],
    i_range: RangeInclusive<u64>,
    status: ProofStatus,
    source: &str,
) -> Result<Vec<CongruenceClaim>, CongruenceError> {
    let mut out = Vec::new();
    for t in templates {
        for i in i_range.clone() {
            let k = t.k_step * i + t.k_base;
            let c = CongruenceClaim::tuple(5, k, t.period, t.residues, 5, t.power)?;
            out.push(c.with_status(status).with_source(source));
            if t.k_step == 0 {
                break;
            }
        }
    }
    Ok(out)
}

/// `A(5, k; 5^a n + 5^a - k) = 0 mod 5^a`.
fn ladder(k: u64, alphas: RangeInclusive<u32>, source: &str) -> Result<Vec<CongruenceClaim>, CongruenceError> {
    alphas
        .filter(|&a| a >= 1)
        .map(|a| {
            let m = 5u64.pow(a);
            Ok(CongruenceClaim::tuple(5, k, m, &[m - k], 5, a)?.with_source(source))
        })
        .collect()
}

fn check_general_prime(p: u64) -> Result<(), CongruenceError> {
    if p < 5 || !crate::arith::is_prime(p) {
        return Err(CongruenceError::Invalid(format!(
            "residue-criterion families need a prime p >= 5, got {p}"
        )));
    }
    Ok(())
}

/// `A(p, p^N i - shift; p n + r) = 0 mod p^N`, one claim per residue.
fn residue_criterion(
    params: &FamilyParams,
    shift: u64,
    residues: fn(u64) -> Result<Vec<u64>, CongruenceError>,
    source: &str,
) -> Result<Vec<CongruenceClaim>, CongruenceError> {
    let mut out = Vec::new();
    for p in params.primes() {
        check_general_prime(p)?;
        let rs = residues(p)?;
        for n in params.powers() {
            for i in params.i(1..=2) {
                let k = p
                    .checked_pow(n)
                    .and_then(|m| m.checked_mul(i))
                    .and_then(|m| m.checked_sub(shift))
                    .filter(|&k| k >= 1)
                    .ok_or_else(|| CongruenceError::Invalid(format!("k out of range for p = {p}, N = {n}, i = {i}")))?;
                out.push(CongruenceClaim::tuple(p, k, p, &rs, p, n)?.with_source(source));
            }
        }
    }
    Ok(out)
}

fn triangular_zero(params: &FamilyParams) -> Result<Vec<CongruenceClaim>, CongruenceError> {
    let mut out = Vec::new();
    for p in params.primes() {
        check_general_prime(p)?;
        let r = triangular_zero_residue(p)?;
        for i in params.i(1..=3) {
            let k = p * i - 3;
            out.push(CongruenceClaim::tuple(p, k, p, &[r], p, 1)?.with_source("thm-1.4"));
        }
    }
    Ok(out)
}

/// Hypotheses fed to the propagation family.
fn propagation_hypotheses() -> Result<Vec<CongruenceClaim>, CongruenceError> {
    let mut h = from_templates(FIXED_FIVE, 0..=0, ProofStatus::Proved, "thm-1.5")?;
    h.extend(ladder(2, 1..=2, "eq-d")?);
    h.extend(ladder(3, 1..=2, "eq-f")?);
    let seven = FamilyParams {
        primes: Some(vec![7]),
        powers: Some(1..=1),
        i: Some(1..=1),
        ..FamilyParams::default()
    };
    h.extend(residue_criterion(&seven, 1, pentagonal_gap_residues, "thm-1.2")?);
    h.extend(residue_criterion(&seven, 3, triangular_gap_residues, "thm-1.3")?);
    h.extend(triangular_zero(&seven)?);
    Ok(h)
}

fn exponent_of(p: u64, m: u64) -> Option<u32> {
    let mut e = 0;
    let mut x = m;
    while x > 1 {
        if !x.is_multiple_of(p) {
            return None;
        }
        x /= p;
        e += 1;
    }
    (e >= 1).then_some(e)
}

/// From `A(p, k; p^M n + r) = 0 mod p^N` conclude
/// `A(p, p^{M+N-1} i + k; p^M n + r) = 0 mod p^N`. Each conclusion carries
/// its hypothesis.
fn propagation(params: &FamilyParams) -> Result<Vec<CongruenceClaim>, CongruenceError> {
    let mut out = Vec::new();
    for h in propagation_hypotheses()? {
        let ClaimSubject::TupleCount { t: p, k } = h.subject else {
            continue;
        };
        let m = exponent_of(p, h.period).expect("hypothesis periods are powers of p");
        let lift = p
            .checked_pow(m + h.power - 1)
            .ok_or_else(|| CongruenceError::Invalid("lift overflows".into()))?;
        for i in params.i(1..=1) {
            let k2 = lift
                .checked_mul(i)
                .and_then(|x| x.checked_add(k))
                .ok_or_else(|| CongruenceError::Invalid("k overflows".into()))?;
            let mut c = CongruenceClaim::new(
                ClaimSubject::TupleCount { t: p, k: k2 },
                h.period,
                h.residues.clone(),
                p,
                h.power,
            )?
            .with_source("thm-1.6");
            c.hypothesis = Some(Box::new(h.clone()));
            out.push(c);
        }
    }
    Ok(out)
}

fn classical() -> Result<Vec<CongruenceClaim>, CongruenceError> {
    [(5, 4), (7, 5), (11, 6)]
        .into_iter()
        .map(|(p, r)| {
            Ok(CongruenceClaim::new(ClaimSubject::Partition, p, vec![r], p, 1)?
                .with_status(ProofStatus::Classical)
                .with_source("ramanujan-classical"))
        })
        .collect()
}

fn dedup(claims: Vec<CongruenceClaim>) -> Vec<CongruenceClaim> {
    let mut seen = HashSet::new();
    claims.into_iter().filter(|c| seen.insert(c.key())).collect()
}

/// Expands one family into a deduplicated list of claims.
pub fn expand_family(id: &str, params: &FamilyParams) -> Result<Vec<CongruenceClaim>, CongruenceError> {
    let claims = match id {
        "eq-d" => ladder(2, params.alpha(1..=3), id)?,
        "eq-f" => ladder(3, params.alpha(1..=3), id)?,
        "thm-1.1" => params
            .alpha(1..=2)
            .map(|a| {
                let m = 5u64.pow(a + 1);
                Ok(CongruenceClaim::tuple(5, 4, m, &[m - 4], 5, a + 4)?.with_source(id))
            })
            .collect::<Result<_, CongruenceError>>()?,
        "thm-1.2" => residue_criterion(params, 1, pentagonal_gap_residues, id)?,
        "thm-1.3" => residue_criterion(params, 3, triangular_gap_residues, id)?,
        "thm-1.4" => triangular_zero(params)?,
        "thm-1.5" => from_templates(FIXED_FIVE, 0..=0, ProofStatus::Proved, id)?,
        "thm-1.6" => propagation(params)?,
        "cor-1.8" => from_templates(LIFTED_FIVE, params.i(0..=1), ProofStatus::Proved, id)?,
        "sec7-proved" => from_templates(HIGHER_K_FIVE, params.i(0..=1), ProofStatus::Proved, id)?,
        "sec7-conjectures" => from_templates(OPEN_FIVE, params.i(0..=1), ProofStatus::Conjecture, id)?,
        "ramanujan-classical" => classical()?,
        other => return Err(CongruenceError::UnknownFamily(other.to_string())),
    };
    Ok(dedup(claims))
}

/// Families making up a suite. A bare family id is a one-family suite.
pub fn suite_families(suite: &str) -> Result<Vec<&'static str>, CongruenceError> {
    Ok(match suite {
        "paper-proved" => PROVED_FAMILIES.to_vec(),
        "paper-conjectures" => vec!["sec7-conjectures"],
        "general-theorems" => vec!["thm-1.2", "thm-1.3", "thm-1.4", "thm-1.6"],
        "paper-all" => {
            let mut v = PROVED_FAMILIES.to_vec();
            v.push("sec7-conjectures");
            v
        }
        other => match FAMILY_IDS.iter().find(|&&f| f == other) {
            Some(f) => vec![*f],
            None => return Err(CongruenceError::UnknownSuite(other.to_string())),
        },
    })
}

/// All claims of a suite, first occurrence winning on duplicates.
pub fn expand_suite(suite: &str, params: &FamilyParams) -> Result<Vec<CongruenceClaim>, CongruenceError> {
    let mut all = Vec::new();
    for f in suite_families(suite)? {
        all.extend(expand_family(f, params)?);
    }
    Ok(dedup(all))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(v: &[CongruenceClaim]) -> Vec<String> {
        v.iter().map(|c| c.id()).collect()
    }

    #[test]
    fn residue_family_example() {
        let p = FamilyParams {
            primes: Some(vec![5]),
            powers: Some(1..=1),
            i: Some(1..=1),
            ..Default::default()
        };
        assert_eq!(
            ids(&expand_family("thm-1.2", &p).unwrap()),
            vec!["A(5,4; 5n+3,4) % 5 == 0"]
        );
        assert_eq!(ids(&expand_family("thm-1.4", &p).unwrap()), vec!["A(5,2; 5n+3) % 5 == 0"]);
        assert_eq!(
            ids(&expand_family("thm-1.3", &p).unwrap()),
            vec!["A(5,2; 5n+2,4) % 5 == 0"]
        );
    }

    #[test]
    fn ladders() {
        let d = expand_family("eq-d", &FamilyParams::default()).unwrap();
        assert_eq!(d.iter().map(|c| c.modulus()).collect::<Vec<_>>(), vec![5, 25, 125]);
        assert_eq!(d[2].id(), "A(5,2; 125n+123) % 5^3 == 0");
        let t = expand_family("thm-1.1", &FamilyParams { alpha: Some(0..=2), ..Default::default() }).unwrap();
        assert_eq!(
            ids(&t),
            vec!["A(5,4; 5n+1) % 5^4 == 0", "A(5,4; 25n+21) % 5^5 == 0", "A(5,4; 125n+121) % 5^6 == 0"]
        );
        // the family itself starts at alpha = 1
        assert_eq!(expand_family("thm-1.1", &FamilyParams::default()).unwrap().len(), 2);
    }

    #[test]
    fn fixed_lists() {
        let five = expand_family("thm-1.5", &FamilyParams::default()).unwrap();
        assert_eq!(five.len(), 6);
        assert!(ids(&five).contains(&"A(5,4; 25n+21) % 5^5 == 0".to_string()));
        // thirteen templates, one repeated, at i = 0 and 1 (i = 0 collapses some)
        let cor = expand_family("cor-1.8", &FamilyParams { i: Some(1..=1), ..Default::default() }).unwrap();
        assert_eq!(cor.len(), 12);
        assert!(ids(&cor).contains(&"A(5,390629; 125n+121) % 5^6 == 0".to_string()));
        let conj = expand_family("sec7-conjectures", &FamilyParams::default()).unwrap();
        assert!(conj.iter().all(|c| c.status == ProofStatus::Conjecture));
        assert_eq!(expand_family("sec7-conjectures", &FamilyParams { i: Some(1..=1), ..Default::default() }).unwrap().len(), 10);
        assert_eq!(expand_family("ramanujan-classical", &FamilyParams::default()).unwrap().len(), 3);
    }

    #[test]
    fn propagation_carries_hypotheses() {
        let v = expand_family("thm-1.6", &FamilyParams::default()).unwrap();
        let c = v.iter().find(|c| c.id() == "A(5,390629; 125n+121) % 5^6 == 0").unwrap();
        assert_eq!(c.hypothesis.as_ref().unwrap().id(), "A(5,4; 125n+121) % 5^6 == 0");
        let c = v.iter().find(|c| c.id() == "A(5,127; 25n+23) % 5^2 == 0").unwrap();
        assert_eq!(c.hypothesis.as_ref().unwrap().source, "thm-1.5");
        let c = v.iter().find(|c| c.id() == "A(5,7; 5n+3) % 5 == 0").unwrap();
        assert_eq!(c.hypothesis.as_ref().unwrap().source, "eq-d");
        assert!(v.iter().all(|c| c.hypothesis.is_some()));
    }

    #[test]
    fn suites_resolve() {
        assert!(expand_suite("paper-proved", &FamilyParams::default()).unwrap().len() > 50);
        assert_eq!(suite_families("thm-1.5").unwrap(), vec!["thm-1.5"]);
        assert!(matches!(suite_families("bogus"), Err(CongruenceError::UnknownSuite(_))));
        assert!(matches!(expand_family("bogus", &FamilyParams::default()), Err(CongruenceError::UnknownFamily(_))));
        let all = expand_suite("paper-all", &FamilyParams::default()).unwrap();
        let keys: HashSet<_> = all.iter().map(|c| c.key()).collect();
        assert_eq!(keys.len(), all.len());
    }

    #[test]
    fn bad_primes_rejected() {
        let p = FamilyParams { primes: Some(vec![3]), ..Default::default() };
        assert!(expand_family("thm-1.2", &p).is_err());
        let p = FamilyParams { primes: Some(vec![9]), ..Default::default() };
        assert!(expand_family("thm-1.4", &p).is_err());
    }
}
