//! Linear systems over truncated power series in `q`.

use crate::char_series::QPoly;
use crate::error::{Error, Result};
use crate::qexp::QExp;
use crate::scalar::Rat;

/// Solves `A x = rhs` modulo `q^{cutoff+}` when `A mod q` is invertible,
/// by Gaussian elimination with pivots whose constant term is nonzero.
///
/// All entries must have non-negative exponents.
pub(crate) fn solve_unitriangular_mod_q(mut a: Vec<Vec<QPoly>>, mut rhs: Vec<QPoly>, cutoff: QExp) -> Result<Vec<QPoly>> {
    let n = rhs.len();
    let trunc = Some(cutoff);
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].coeff(QExp::ZERO).is_zero())
            .ok_or_else(|| Error::Consistency(format!("system is singular modulo q at column {col}")))?;
        a.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = a[col][col].inverse_series(cutoff).expect("unit pivot");
        let row: Vec<QPoly> = a[col].iter().map(|e| e.mul_truncated(&inv, trunc)).collect();
        let r = rhs[col].mul_truncated(&inv, trunc);
        for other in 0..n {
            if other == col || a[other][col].is_zero() {
                continue;
            }
            let factor = a[other][col].clone();
            for k in col..n {
                if !row[k].is_zero() {
                    let sub = factor.mul_truncated(&row[k], trunc);
                    a[other][k] -= &sub;
                }
            }
            let sub = factor.mul_truncated(&r, trunc);
            rhs[other] -= &sub;
        }
        a[col] = row;
        rhs[col] = r;
    }
    Ok(rhs)
}

/// `p / (1 − q^e)` when the division is exact.
pub(crate) fn divide_by_one_minus(p: &QPoly, e: QExp) -> Option<QPoly> {
    if p.is_zero() {
        return Some(QPoly::zero());
    }
    if e == QExp::ZERO {
        return None;
    }
    // For e < 0 rewrite 1 − q^e = −q^e (1 − q^{−e}).
    let (num, step) = if e > QExp::ZERO { (p.clone(), e) } else { (p.shift(-e).scale(&Rat::int(-1)), -e) };
    // r_k = num_k + r_{k−step}, ascending.
    let high = num.degree().unwrap() - step;
    let mut r = QPoly::zero();
    let exps: Vec<QExp> = num.terms().map(|(&x, _)| x).collect();
    let mut frontier: std::collections::BTreeSet<QExp> = exps.into_iter().collect();
    while let Some(x) = frontier.pop_first() {
        if x > high {
            break;
        }
        let c = &num.coeff(x) + &r.coeff(x - step);
        if !c.is_zero() {
            r.add_term(x, &c);
            frontier.insert(x + step);
        }
    }
    let one_minus = &QPoly::one() - &QPoly::q_power(step);
    if &r * &one_minus == num {
        Some(r)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_division() {
        let one_minus_q2 = &QPoly::one() - &QPoly::q_power(QExp::int(2));
        let p = &one_minus_q2 * &QPoly::from_terms([(QExp::int(1), Rat::int(3)), (QExp::int(4), Rat::one())]);
        assert_eq!(
            divide_by_one_minus(&p, QExp::int(2)).unwrap(),
            QPoly::from_terms([(QExp::int(1), Rat::int(3)), (QExp::int(4), Rat::one())])
        );
        let back = divide_by_one_minus(&p, QExp::int(-2)).unwrap();
        let one_minus = &QPoly::one() - &QPoly::q_power(QExp::int(-2));
        assert_eq!(&back * &one_minus, p);
        assert!(divide_by_one_minus(&QPoly::one(), QExp::int(1)).is_none());
    }
}
