use std::fmt;

use super::CongruenceError;
use crate::arith::{is_prime, prime_power};
use crate::eta::EtaExpr;
use crate::report::ProofStatus;

/// The counting function whose coefficients a claim is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClaimSubject {
    /// `A_{t,k}(n)`, generated by `f_t^{t k} / f_1^k`.
    TupleCount { t: u64, k: u64 },
    /// `p(n)`, generated by `1 / f_1`.
    Partition,
}

impl ClaimSubject {
    pub fn generating_function(&self) -> EtaExpr {
        match *self {
            ClaimSubject::TupleCount { t, k } => EtaExpr::tuple_cores(t, k),
            ClaimSubject::Partition => EtaExpr::Int(1).over(EtaExpr::fk(1)),
        }
    }

    /// `k` for tuple counts, 0 for the partition function.
    pub fn k(&self) -> u64 {
        match *self {
            ClaimSubject::TupleCount { k, .. } => k,
            ClaimSubject::Partition => 0,
        }
    }
}

/// `f(M n + r) = 0 mod p^N` for every `n >= 0` and every listed `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceClaim {
    pub subject: ClaimSubject,
    pub period: u64,
    /// Sorted, distinct, each below `period`.
    pub residues: Vec<u64>,
    pub prime: u64,
    pub power: u32,
    pub status: ProofStatus,
    pub source: String,
    /// Largest coefficient index checked; `None` means `T - 1`.
    pub max_index: Option<u64>,
    /// A claim that must hold before this one is meaningful. If it fails,
    /// verification reports this claim as skipped.
    pub hypothesis: Option<Box<CongruenceClaim>>,
}

/// Identity of a claim's statement, ignoring provenance.
pub type ClaimKey = (ClaimSubject, u64, Vec<u64>, u64, u32);

impl CongruenceClaim {
    pub fn new(
        subject: ClaimSubject,
        period: u64,
        residues: Vec<u64>,
        prime: u64,
        power: u32,
    ) -> Result<Self, CongruenceError> {
        if let ClaimSubject::TupleCount { t, k } = subject {
            if t < 2 || k < 1 {
                return Err(CongruenceError::Invalid(format!(
                    "A(t,k) needs t >= 2 and k >= 1, got t = {t}, k = {k}"
                )));
            }
            t.checked_mul(k).filter(|&tk| tk <= i64::MAX as u64).ok_or_else(|| {
                CongruenceError::Invalid(format!("t*k overflows for t = {t}, k = {k}"))
            })?;
        }
        if period == 0 {
            return Err(CongruenceError::Invalid("period must be positive".into()));
        }
        if residues.is_empty() {
            return Err(CongruenceError::Invalid("at least one residue is needed".into()));
        }
        if let Some(r) = residues.iter().find(|&&r| r >= period) {
            return Err(CongruenceError::Invalid(format!(
                "residue {r} is not below the period {period}"
            )));
        }
        if !is_prime(prime) {
            return Err(CongruenceError::NotPrime(prime));
        }
        if power == 0 || prime.checked_pow(power).is_none() {
            return Err(CongruenceError::Invalid(format!(
                "{prime}^{power} is not a usable modulus"
            )));
        }
        let mut residues = residues;
        residues.sort_unstable();
        residues.dedup();
        Ok(CongruenceClaim {
            subject,
            period,
            residues,
            prime,
            power,
            status: ProofStatus::Proved,
            source: String::new(),
            max_index: None,
            hypothesis: None,
        })
    }

    pub fn tuple(t: u64, k: u64, period: u64, residues: &[u64], prime: u64, power: u32) -> Result<Self, CongruenceError> {
        Self::new(ClaimSubject::TupleCount { t, k }, period, residues.to_vec(), prime, power)
    }

    pub fn with_status(mut self, status: ProofStatus) -> Self {
        self.status = status;
        self
    }

    pub fn with_source(mut self, source: &str) -> Self {
        self.source = source.to_string();
        self
    }

    pub fn modulus(&self) -> u64 {
        self.prime.pow(self.power)
    }

    pub fn key(&self) -> ClaimKey {
        (self.subject, self.period, self.residues.clone(), self.prime, self.power)
    }

    pub fn id(&self) -> String {
        self.to_string()
    }

    /// Coefficient indices `M n + r` up to `bound`, ascending.
    pub fn indices(&self, bound: u64) -> Vec<u64> {
        let mut out: Vec<u64> = self
            .residues
            .iter()
            .flat_map(|&r| (r..=bound).step_by(self.period as usize))
            .collect();
        out.sort_unstable();
        out
    }
}

impl fmt::Display for CongruenceClaim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rs: Vec<String> = self.residues.iter().map(u64::to_string).collect();
        let progression = format!("{}n+{}", self.period, rs.join(","));
        match self.subject {
            ClaimSubject::TupleCount { t, k } => write!(f, "A({t},{k}; {progression})")?,
            ClaimSubject::Partition => write!(f, "p({progression})")?,
        }
        if self.power == 1 {
            write!(f, " % {} == 0", self.prime)
        } else {
            write!(f, " % {}^{} == 0", self.prime, self.power)
        }
    }
}

struct Cursor<'a> {
    s: &'a [u8],
    at: usize,
    orig: Vec<usize>,
}

impl Cursor<'_> {
    fn pos(&self) -> usize {
        self.orig.get(self.at).copied().unwrap_or_else(|| self.orig.last().map_or(0, |p| p + 1))
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, CongruenceError> {
        Err(CongruenceError::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, lit: &str) -> bool {
        if self.s[self.at..].starts_with(lit.as_bytes()) {
            self.at += lit.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> Result<(), CongruenceError> {
        if self.eat(lit) {
            Ok(())
        } else {
            self.err(format!("expected '{lit}'"))
        }
    }

    fn peek_digit(&self) -> bool {
        self.s.get(self.at).is_some_and(u8::is_ascii_digit)
    }

    fn uint(&mut self) -> Result<u64, CongruenceError> {
        if !self.peek_digit() {
            return self.err("expected an integer");
        }
        let start = self.pos();
        let mut v: u64 = 0;
        while self.peek_digit() {
            let d = (self.s[self.at] - b'0') as u64;
            v = v
                .checked_mul(10)
                .and_then(|x| x.checked_add(d))
                .ok_or(CongruenceError::Parse {
                    pos: start,
                    msg: "integer does not fit in 64 bits".into(),
                })?;
            self.at += 1;
        }
        Ok(v)
    }
}

/// Parses `A(t,k; M n + r1[,r2,...]) % p^N == 0` or `p(M n + r) % m == 0`.
/// Whitespace is ignored; the modulus may be written `p^N` or as its value.
pub fn parse_claim(text: &str) -> Result<CongruenceClaim, CongruenceError> {
    let (orig, bytes): (Vec<usize>, Vec<u8>) = text
        .bytes()
        .enumerate()
        .filter(|(_, b)| !b.is_ascii_whitespace())
        .unzip();
    let mut c = Cursor { s: &bytes, at: 0, orig };
    let subject = if c.eat("A(") {
        let t = c.uint()?;
        c.expect(",")?;
        let k = c.uint()?;
        c.expect(";")?;
        ClaimSubject::TupleCount { t, k }
    } else if c.eat("p(") {
        ClaimSubject::Partition
    } else {
        return c.err("expected 'A(' or 'p('");
    };
    let period = c.uint()?;
    c.expect("n")?;
    let mut residues = Vec::new();
    if c.eat("+") {
        residues.push(c.uint()?);
        while c.eat(",") {
            residues.push(c.uint()?);
        }
    } else {
        residues.push(0);
    }
    c.expect(")")?;
    c.expect("%")?;
    let base = c.uint()?;
    let (prime, power) = if c.eat("^") {
        let n = c.uint()?;
        let n = u32::try_from(n).map_err(|_| CongruenceError::Invalid(format!("exponent {n} too large")))?;
        (base, n)
    } else {
        prime_power(base).ok_or_else(|| {
            CongruenceError::Invalid(format!("modulus {base} is not a prime power"))
        })?
    };
    c.expect("==")?;
    c.expect("0")?;
    if c.at != bytes.len() {
        return c.err("unexpected trailing input");
    }
    let claim = CongruenceClaim::new(subject, period, residues, prime, power)?;
    Ok(claim.with_status(ProofStatus::Conjecture).with_source("user"))
}
