//! Named q-series (`f_k`, q-Pochhammer products, `R(q)`, the Jacobi cube
//! series) and evaluation of parsed eta-quotient expressions.

mod build;
mod eval;
mod expr;
mod parse;

pub use build::{f1_cubed_series, fk_series, pochhammer_series, rr_series};
pub use eval::{eval_dissected, eval_expr, eval_text};
pub use expr::EtaExpr;
pub use parse::{parse_expr, ParseError};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{dissect, invert, mul, pow, reduce_mod, subst_qk, CoefficientRing};

    const EX: CoefficientRing = CoefficientRing::Exact;

    fn ints(text: &str, order: usize) -> Vec<i64> {
        let s = eval_text(text, EX, order).unwrap();
        (0..order).map(|n| s.coeff_i64(n).unwrap()).collect()
    }

    #[test]
    fn four_tuples_of_five_cores() {
        // k-fold convolution of the 5-core counts 1,1,2,3,5
        assert_eq!(ints("f5^20/f1^4", 5), vec![1, 4, 14, 40, 105]);
    }

    #[test]
    fn pairs_of_five_cores_at_three() {
        assert_eq!(ints("f5^10/f1^2", 4)[3], 10);
    }

    #[test]
    fn constant_expression() {
        assert_eq!(ints("1", 4), vec![1, 0, 0, 0]);
        assert_eq!(ints("q", 3), vec![0, 1, 0]);
        assert_eq!(ints("-3*q^2 + 2", 4), vec![2, 0, -3, 0]);
    }

    #[test]
    fn partition_numbers() {
        assert_eq!(ints("1/f1", 6), vec![1, 1, 2, 3, 5, 7]);
    }

    #[test]
    fn fifth_dissection_of_partitions() {
        let p = eval_text("1/f1", EX, 15).unwrap();
        let d = dissect(&p, 5, 4).unwrap();
        assert_eq!(
            (0..3).map(|n| d.coeff_i64(n).unwrap()).collect::<Vec<_>>(),
            vec![5, 30, 135]
        );
        let rhs = eval_text("5*f5^5/f1^6", EX, 3).unwrap();
        assert_eq!(d, rhs);
    }

    #[test]
    fn dissected_evaluation_matches_full_evaluation() {
        for text in ["f5^20/f1^4", "q*f5^8*f1^8", "3*f1^2 - q*f2^3/f1", "-(f1^3)"] {
            let e = parse_expr(text).unwrap();
            let full = eval_expr(&e, EX, 5 * 39 + 4 + 1).unwrap();
            let want = dissect(&full, 5, 4).unwrap();
            assert_eq!(eval_dissected(&e, EX, 5, 4, 40).unwrap(), want, "{text}");
            let m = CoefficientRing::modulo(125).unwrap();
            assert_eq!(
                eval_dissected(&e, m, 5, 4, 40).unwrap(),
                reduce_mod(&want, 125).unwrap(),
                "{text} mod 125"
            );
        }
    }

    #[test]
    fn fk_is_substituted_f1() {
        let f1 = fk_series(1, EX, 200).unwrap();
        for k in [2u64, 3, 5, 7, 25] {
            assert_eq!(fk_series(k, EX, 200).unwrap(), subst_qk(&f1, k as usize).unwrap());
        }
    }

    #[test]
    fn jacobi_cube_identity() {
        let f1 = fk_series(1, EX, 500).unwrap();
        assert_eq!(f1_cubed_series(EX, 500), pow(&f1, 3).unwrap());
    }

    #[test]
    fn pochhammer_factorisation() {
        for b in [2u64, 3, 5] {
            let mut acc = crate::series::TruncatedSeries::one(EX, 200);
            for a in 1..=b {
                acc = mul(&acc, &pochhammer_series(a, b, EX, 200).unwrap()).unwrap();
            }
            assert_eq!(acc, fk_series(1, EX, 200).unwrap());
        }
    }

    #[test]
    fn rogers_relation() {
        let lhs = eval_text("R^-5 - 11*q - q^2*R^5", EX, 300).unwrap();
        let rhs = eval_text("f1^6/f5^6", EX, 300).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn quotient_routes_agree() {
        // Div(a, Pow(b, e)) uses a negative power; compare with explicit inverse
        let t = 120;
        let direct = eval_text("f5^20/f1^4", EX, t).unwrap();
        let f5 = fk_series(5, EX, t).unwrap();
        let f1 = fk_series(1, EX, t).unwrap();
        let manual = mul(
            &pow(&f5, 20).unwrap(),
            &invert(&pow(&f1, 4).unwrap()).unwrap(),
        )
        .unwrap();
        assert_eq!(direct, manual);
        let nested = eval_text("(f1^2)^-3 * sub(f1^2, 5)", EX, t).unwrap();
        let manual = mul(
            &pow(&f1, -6).unwrap(),
            &subst_qk(&pow(&f1, 2).unwrap(), 5).unwrap(),
        )
        .unwrap();
        assert_eq!(nested, manual);
    }

    #[test]
    fn non_unit_denominators_rejected() {
        assert!(eval_text("1/(2 + q)", EX, 5).is_err());
        let m25 = CoefficientRing::modulo(25).unwrap();
        assert!(eval_text("1/(5 + q)", m25, 5).is_err());
        // 2 is a unit mod 25
        assert!(eval_text("1/(2 + q)", m25, 5).is_ok());
        assert!(eval_text("f1/2", EX, 5).is_err());
    }

    #[test]
    fn evaluation_is_deterministic() {
        let e = parse_expr("f5^20/f1^4 + R^3*sub(P(2,7),3)").unwrap();
        let a = eval_expr(&e, EX, 150).unwrap();
        let b = eval_expr(&e, EX, 150).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn display_round_trips() {
        for text in [
            "f5^20/f1^4",
            "sub(R,5)^-4 + q*sub(R,5)^-3",
            "-f1^2 - (q - 1)*P(2,5)",
            "25*(48*f1^4*f5^4 + 625*q*f5^10/f1^2)",
            "(f1^2)^3/(q*2)",
        ] {
            let e = parse_expr(text).unwrap();
            assert_eq!(parse_expr(&e.to_string()).unwrap(), e, "{text} -> {e}");
        }
    }
}
