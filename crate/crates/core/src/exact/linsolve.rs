//! Exact reduced row-echelon solve over the rationals.

use num_traits::{One, Zero};

use super::Rational;

#[derive(Clone, Debug, PartialEq)]
pub enum LinearSolution {
    Unique(Vec<Rational>),
    /// `particular + sum t_i * basis[i]` for free parameters `t_i`.
    Family { particular: Vec<Rational>, basis: Vec<Vec<Rational>> },
    Inconsistent,
}

impl LinearSolution {
    /// Some solution, with free parameters set to zero.
    pub fn any(&self) -> Option<&[Rational]> {
        match self {
            LinearSolution::Unique(v) => Some(v),
            LinearSolution::Family { particular, .. } => Some(particular),
            LinearSolution::Inconsistent => None,
        }
    }
}

/// Solve `matrix * x = rhs`; rows may outnumber or undernumber the unknowns.
pub fn solve_linear(matrix: &[Vec<Rational>], rhs: &[Rational]) -> LinearSolution {
    assert_eq!(matrix.len(), rhs.len(), "row count mismatch");
    let ncols = matrix.first().map_or(0, |r| r.len());
    let mut rows: Vec<Vec<Rational>> = matrix
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            assert_eq!(r.len(), ncols, "ragged matrix");
            let mut v = r.clone();
            v.push(b.clone());
            v
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == rows.len() {
            break;
        }
        // Prefer the pivot with the smallest height to limit coefficient growth.
        let Some(p) = (row..rows.len())
            .filter(|&r| !rows[r][col].is_zero())
            .min_by_key(|&r| rows[r][col].numer().bits() + rows[r][col].denom().bits())
        else {
            continue;
        };
        rows.swap(row, p);
        let inv = rows[row][col].recip();
        for v in rows[row].iter_mut() {
            *v *= &inv;
        }
        let prow = rows[row].clone();
        for (r, other) in rows.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let f = other[col].clone();
            for (c, pv) in prow.iter().enumerate().skip(col) {
                if !pv.is_zero() {
                    other[c] -= &f * pv;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if rows[row..].iter().any(|r| !r[ncols].is_zero()) {
        return LinearSolution::Inconsistent;
    }
    let mut particular = vec![Rational::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = rows[r][ncols].clone();
    }
    if pivots.len() == ncols {
        return LinearSolution::Unique(particular);
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -rows[r][f].clone();
            }
            v
        })
        .collect();
    LinearSolution::Family { particular, basis }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use proptest::prelude::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    fn apply(m: &[Vec<Rational>], x: &[Rational]) -> Vec<Rational> {
        m.iter().map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    }

    #[test]
    fn identity() {
        let m = mat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let v = vec![int(3), int(-1), int(7)];
        assert_eq!(solve_linear(&m, &v), LinearSolution::Unique(v));
    }

    #[test]
    fn one_parameter_family() {
        let m = mat(&[&[1, 1]]);
        match solve_linear(&m, &[int(1)]) {
            LinearSolution::Family { particular, basis } => {
                assert_eq!(basis.len(), 1);
                assert_eq!(apply(&m, &particular), vec![int(1)]);
                assert_eq!(apply(&m, &basis[0]), vec![int(0)]);
            }
            other => panic!("expected family, got {other:?}"),
        }
    }

    #[test]
    fn inconsistent() {
        let m = mat(&[&[1, 2], &[2, 4]]);
        assert_eq!(solve_linear(&m, &[int(1), int(3)]), LinearSolution::Inconsistent);
    }

    proptest! {
        #[test]
        fn solution_reproduces_rhs(entries in proptest::collection::vec(-6i64..7, 12), x in proptest::collection::vec(-9i64..10, 3)) {
            let m: Vec<Vec<Rational>> = entries.chunks(3).map(|r| r.iter().map(|&v| int(v)).collect()).collect();
            let xs: Vec<Rational> = x.iter().map(|&v| int(v)).collect();
            let b = apply(&m, &xs);
            let sol = solve_linear(&m, &b);
            let got = sol.any().expect("consistent by construction");
            prop_assert_eq!(apply(&m, got), b.clone());
            if let LinearSolution::Family { basis, .. } = &sol {
                for v in basis {
                    prop_assert!(apply(&m, v).iter().all(|e| e.is_zero()));
                }
            }
        }
    }
}
