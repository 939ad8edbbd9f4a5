//! Exact feasibility for small systems `A x ≤ b`, `x ≥ 0` by phase-one
//! simplex over big rationals with Bland's rule.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::setcore::Ratio;

/// One inequality `Σ coef·x[var] ≤ rhs`.
#[derive(Clone, Debug)]
pub(crate) struct Row {
    pub terms: Vec<(usize, i64)>,
    pub rhs: Ratio,
}

fn big(r: Ratio) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

fn small(r: &BigRational) -> Option<Ratio> {
    Some(Ratio::new(r.numer().to_i64()?, r.denom().to_i64()?))
}

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Feasibility {
    Point(Vec<Ratio>),
    Infeasible,
    /// A vertex exists but does not fit in 64-bit rationals.
    Overflow,
}

/// A vertex of `{x ≥ 0 : rows}`.
pub(crate) fn feasible_point(vars: usize, rows: &[Row]) -> Feasibility {
    let m = rows.len();
    let negative: Vec<usize> = (0..m).filter(|&i| rows[i].rhs < Ratio::zero()).collect();
    let cols = vars + m + negative.len();
    let rhs = cols;
    let mut t = vec![vec![BigRational::zero(); cols + 1]; m];
    let mut basis = vec![0usize; m];
    for (i, row) in rows.iter().enumerate() {
        let sign = if row.rhs < Ratio::zero() { -1 } else { 1 };
        for &(v, c) in &row.terms {
            t[i][v] += BigRational::from_integer(BigInt::from(sign * c));
        }
        t[i][vars + i] = BigRational::from_integer(BigInt::from(sign));
        t[i][rhs] = big(row.rhs * Ratio::from_integer(sign));
        basis[i] = vars + i;
    }
    for (k, &i) in negative.iter().enumerate() {
        t[i][vars + m + k] = BigRational::one();
        basis[i] = vars + m + k;
    }
    let mut obj = vec![BigRational::zero(); cols + 1];
    for &i in &negative {
        for j in 0..=cols {
            obj[j] += &t[i][j];
        }
    }
    for &i in &negative {
        obj[basis[i]] = BigRational::zero();
    }

    loop {
        let Some(enter) = (0..vars + m).find(|&j| obj[j].is_positive()) else { break };
        let leave = (0..m)
            .filter(|&i| t[i][enter].is_positive())
            .min_by(|&a, &b| {
                let ra = &t[a][rhs] / &t[a][enter];
                let rb = &t[b][rhs] / &t[b][enter];
                ra.cmp(&rb).then(basis[a].cmp(&basis[b]))
            })
            .expect("phase one is bounded");
        let p = t[leave][enter].clone();
        for x in t[leave].iter_mut() {
            *x /= &p;
        }
        let pivot_row = t[leave].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != leave && !row[enter].is_zero() {
                let k = row[enter].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &k * y;
                }
            }
        }
        if !obj[enter].is_zero() {
            let k = obj[enter].clone();
            for (x, y) in obj.iter_mut().zip(&pivot_row) {
                *x -= &k * y;
            }
        }
        basis[leave] = enter;
    }
    if obj[rhs].is_positive() {
        return Feasibility::Infeasible;
    }
    let mut x = vec![Ratio::zero(); vars];
    for (i, &b) in basis.iter().enumerate() {
        if b < vars {
            match small(&t[i][rhs]) {
                Some(v) => x[b] = v,
                None => return Feasibility::Overflow,
            }
        }
    }
    Feasibility::Point(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(terms: &[(usize, i64)], rhs: i64) -> Row {
        Row { terms: terms.to_vec(), rhs: Ratio::from_integer(rhs) }
    }

    fn satisfies(x: &[Ratio], rows: &[Row]) -> bool {
        x.iter().all(|v| *v >= Ratio::zero())
            && rows.iter().all(|r| {
                r.terms.iter().map(|&(v, c)| x[v] * Ratio::from_integer(c)).sum::<Ratio>() <= r.rhs
            })
    }

    #[test]
    fn finds_points() {
        let rows = vec![row(&[(0, -1), (1, -1)], -3), row(&[(0, 1)], 2), row(&[(1, 2)], 3)];
        let Feasibility::Point(x) = feasible_point(2, &rows) else { panic!("feasible") };
        assert!(satisfies(&x, &rows));
        let half = vec![row(&[(0, -2)], -1), row(&[(0, 2)], 1)];
        assert_eq!(feasible_point(1, &half), Feasibility::Point(vec![Ratio::new(1, 2)]));
    }

    #[test]
    fn detects_infeasible() {
        let rows = vec![row(&[(0, -1)], -3), row(&[(0, 1)], 2)];
        assert_eq!(feasible_point(1, &rows), Feasibility::Infeasible);
        assert_eq!(feasible_point(1, &[row(&[], -1)]), Feasibility::Infeasible);
    }
}
