use proptest::prelude::*;

use super::*;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn dense(rows: &[&[i64]]) -> RatMatrix {
    RatMatrix::from_dense(&rows.iter().map(|r| r.iter().map(|&v| Rational::from(v)).collect()).collect::<Vec<_>>())
}

#[test]
fn identity_system_returns_rhs() {
    let b = vec![q(1, 2), q(-3, 1), q(7, 5)];
    assert_eq!(solve_unique(&RatMatrix::identity(3), &b).unwrap(), b);
}

#[test]
fn singular_consistent_is_underdetermined() {
    let a = dense(&[&[1, 2], &[2, 4]]);
    let err = solve_unique(&a, &[q(3, 1), q(6, 1)]).unwrap_err();
    assert_eq!(err, SolveError::Underdetermined { nullity: 1, free: vec![1] });
}

#[test]
fn inconsistent_reports_witness_row() {
    let a = dense(&[&[1, 1], &[1, -1], &[2, 0], &[1, 0]]);
    let err = solve_unique(&a, &[q(2, 1), q(0, 1), q(2, 1), q(5, 1)]).unwrap_err();
    assert_eq!(err, SolveError::Inconsistent { row: 3 });
}

#[test]
fn overdetermined_consistent() {
    let a = dense(&[&[1, 1], &[1, -1], &[3, 1]]);
    let x = solve_unique(&a, &[q(1, 1), q(0, 1), q(2, 1)]).unwrap();
    assert_eq!(x, vec![q(1, 2), q(1, 2)]);
}

#[test]
fn set_get_and_zero_entries() {
    let mut m = RatMatrix::new(2, 3);
    m.set(0, 2, q(5, 3));
    m.set(1, 0, q(1, 1));
    m.set(1, 0, Rational::zero());
    assert_eq!(m.get(0, 2), q(5, 3));
    assert!(m.row(1).is_empty());
}

fn small_rat() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| Rational::new(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn solution_satisfies_system_and_ignores_row_order(
        n in 1usize..6,
        extra in 0usize..4,
        entries in prop::collection::vec(small_rat(), 100),
        xs in prop::collection::vec(small_rat(), 6),
        shuffle in any::<u64>(),
    ) {
        let rows = n + extra;
        let mut a = RatMatrix::new(0, n);
        for i in 0..rows {
            let mut row: SparseRow = (0..n).map(|j| (j, entries[(i * n + j) % entries.len()].clone())).collect();
            if i < n {
                // diagonally dominant leading block keeps the system nonsingular
                row[i].1 = &row[i].1 + &Rational::from(100);
            }
            a.push_row(row);
        }
        let x: Vec<Rational> = xs[..n].to_vec();
        let b = a.mul_vec(&x);
        let sol = solve_unique(&a, &b).unwrap();
        prop_assert_eq!(&a.mul_vec(&sol), &b);
        prop_assert_eq!(&sol, &x);

        let mut perm: Vec<usize> = (0..rows).collect();
        let mut s = shuffle;
        for i in (1..rows).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let pb: Vec<Rational> = perm.iter().map(|&i| b[i].clone()).collect();
        prop_assert_eq!(solve_unique(&a.permute_rows(&perm), &pb).unwrap(), sol);
    }
}
