use std::fmt;

/// Expression over eta-type atoms.
///
/// `Fk(k)` is `f_k = (q^k; q^k)_inf`, `Pochhammer { a, b }` is
/// `(q^a; q^b)_inf`, `Rogers` is the quotient
/// `(q;q^5)(q^4;q^5) / ((q^2;q^5)(q^3;q^5))`, and `Subst(e, k)` replaces `q`
/// by `q^k` in `e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum EtaExpr {
    Fk(u64),
    Pochhammer { a: u64, b: u64 },
    Rogers,
    Q,
    Int(i64),
    Neg(Box<EtaExpr>),
    Add(Box<EtaExpr>, Box<EtaExpr>),
    Sub(Box<EtaExpr>, Box<EtaExpr>),
    Mul(Box<EtaExpr>, Box<EtaExpr>),
    Div(Box<EtaExpr>, Box<EtaExpr>),
    Pow(Box<EtaExpr>, i64),
    Subst(Box<EtaExpr>, u64),
}

impl EtaExpr {
    pub fn fk(k: u64) -> Self {
        EtaExpr::Fk(k)
    }

    pub fn pow(self, e: i64) -> Self {
        EtaExpr::Pow(Box::new(self), e)
    }

    pub fn subst(self, k: u64) -> Self {
        EtaExpr::Subst(Box::new(self), k)
    }

    pub fn times(self, rhs: EtaExpr) -> Self {
        EtaExpr::Mul(Box::new(self), Box::new(rhs))
    }

    pub fn over(self, rhs: EtaExpr) -> Self {
        EtaExpr::Div(Box::new(self), Box::new(rhs))
    }

    /// `f_t^{t k} / f_1^k`, the generating function of partition k-tuples
    /// with t-cores.
    pub fn tuple_cores(t: u64, k: u64) -> Self {
        EtaExpr::fk(t)
            .pow((t * k) as i64)
            .over(EtaExpr::fk(1).pow(k as i64))
    }

    /// Binding strength used when printing: higher binds tighter.
    fn precedence(&self) -> u8 {
        match self {
            EtaExpr::Add(..) | EtaExpr::Sub(..) => 1,
            EtaExpr::Mul(..) | EtaExpr::Div(..) => 2,
            EtaExpr::Neg(..) => 3,
            EtaExpr::Int(v) if *v < 0 => 3,
            EtaExpr::Pow(..) => 4,
            _ => 5,
        }
    }

    fn fmt_child(&self, f: &mut fmt::Formatter<'_>, min_prec: u8) -> fmt::Result {
        if self.precedence() < min_prec {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl fmt::Display for EtaExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EtaExpr::Fk(k) => write!(f, "f{k}"),
            EtaExpr::Pochhammer { a, b } => write!(f, "P({a},{b})"),
            EtaExpr::Rogers => write!(f, "R"),
            EtaExpr::Q => write!(f, "q"),
            EtaExpr::Int(v) if *v < 0 => write!(f, "-{}", v.unsigned_abs()),
            EtaExpr::Int(v) => write!(f, "{v}"),
            EtaExpr::Neg(x) => {
                write!(f, "-")?;
                x.fmt_child(f, 3)
            }
            EtaExpr::Add(a, b) => {
                a.fmt_child(f, 1)?;
                write!(f, " + ")?;
                b.fmt_child(f, 2)
            }
            EtaExpr::Sub(a, b) => {
                a.fmt_child(f, 1)?;
                write!(f, " - ")?;
                b.fmt_child(f, 2)
            }
            EtaExpr::Mul(a, b) => {
                a.fmt_child(f, 2)?;
                write!(f, "*")?;
                b.fmt_child(f, 3)
            }
            EtaExpr::Div(a, b) => {
                a.fmt_child(f, 2)?;
                write!(f, "/")?;
                b.fmt_child(f, 3)
            }
            EtaExpr::Pow(x, e) => {
                x.fmt_child(f, 5)?;
                write!(f, "^{e}")
            }
            EtaExpr::Subst(x, k) => write!(f, "sub({x},{k})"),
        }
    }
}
