use homlie_core::linsolve::{in_span, nullspace, rank, RationalMatrix};
use homlie_core::poly::int;
use homlie_core::Rational;
use num_traits::Zero;
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    prop::collection::vec(prop::collection::vec((-3i64..=3).prop_map(int), cols), rows)
}

/// Leibniz expansion, independent of elimination.
fn det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 0 {
        return int(1);
    }
    let mut total = int(0);
    for j in 0..n {
        let minor: Vec<Vec<Rational>> =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect()).collect();
        let term = &m[0][j] * det(&minor);
        if j % 2 == 0 { total += term } else { total -= term }
    }
    total
}

proptest! {
    #[test]
    fn rank_plus_nullity(rows in (1usize..5, 1usize..6).prop_flat_map(|(r, c)| matrix(r, c))) {
        let m = RationalMatrix::from_rows(rows).unwrap();
        let ns = nullspace(&m);
        prop_assert_eq!(rank(&m) + ns.len(), m.cols());
        for v in &ns {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn full_rank_iff_nonzero_determinant(rows in (1usize..5).prop_flat_map(|n| matrix(n, n))) {
        let n = rows.len();
        let d = det(&rows);
        let m = RationalMatrix::from_rows(rows).unwrap();
        prop_assert_eq!(rank(&m) == n, !d.is_zero());
    }

    #[test]
    fn columns_lie_in_their_span(rows in matrix(3, 4)) {
        let cols: Vec<Vec<Rational>> = (0..4).map(|j| rows.iter().map(|r| r[j].clone()).collect()).collect();
        let sum: Vec<Rational> = (0..3).map(|i| &cols[0][i] + &cols[1][i] - &cols[2][i]).collect();
        prop_assert!(in_span(&sum, &cols[..3]).unwrap());
    }
}
